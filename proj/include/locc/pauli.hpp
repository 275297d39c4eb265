#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "bitvec.hpp"
#include "errors.hpp"

namespace locc {

/// Multi-qubit Pauli operator i^phase * prod_q X_q^{x_q} Z_q^{z_q}.
///
/// The phase is kept in this X-before-Z form, so a Y factor contributes one
/// unit of i relative to its printed coefficient. Text form prints the
/// coefficient of the operator written with I/X/Y/Z letters.
class PauliString {
   public:
    PauliString() = default;
    explicit PauliString(std::size_t num_qubits) : x_(num_qubits), z_(num_qubits) {}

    /// Parses "+XYZ", "-iIZ", "−ZZ" (unicode minus accepted). Throws ParseError with the column.
    static PauliString parse(std::string_view text);

    std::size_t size() const noexcept { return x_.size(); }
    const BitVector &xs() const noexcept { return x_; }
    const BitVector &zs() const noexcept { return z_; }
    BitVector &xs() noexcept { return x_; }
    BitVector &zs() noexcept { return z_; }
    bool x(std::size_t q) const noexcept { return x_.get(q); }
    bool z(std::size_t q) const noexcept { return z_.get(q); }

    /// Exponent of i in the X-before-Z form, in [0, 4).
    int phase() const noexcept { return phase_; }
    void set_phase(int p) noexcept { phase_ = static_cast<std::uint8_t>(((p % 4) + 4) % 4); }
    void add_phase(int p) noexcept { set_phase(phase_ + p); }

    /// Number of Y factors.
    std::size_t y_count() const noexcept { return BitVector::and_popcount(x_, z_); }

    /// Exponent of i multiplying the letter form (what to_string prints).
    int coefficient_phase() const noexcept {
        return static_cast<int>((phase_ + 4 * size() - y_count()) % 4);
    }

    bool is_hermitian() const noexcept { return coefficient_phase() % 2 == 0; }

    /// +1 or -1 for Hermitian strings.
    int sign() const {
        if (!is_hermitian()) {
            throw InvalidOperand("sign() of a non-Hermitian Pauli string");
        }
        return coefficient_phase() == 0 ? 1 : -1;
    }

    /// Sets the letter-form coefficient to +1 or -1.
    void set_sign(int s) noexcept { set_phase(static_cast<int>(y_count()) + (s < 0 ? 2 : 0)); }

    /// 'I', 'X', 'Y' or 'Z' at qubit q.
    char letter(std::size_t q) const noexcept {
        static constexpr char table[4] = {'I', 'X', 'Z', 'Y'};
        return table[(x_.get(q) ? 1 : 0) | (z_.get(q) ? 2 : 0)];
    }

    /// Replaces the factor at q by a letter with no extra coefficient.
    void set_letter(std::size_t q, char c);

    std::size_t weight() const noexcept {
        BitVector support = x_;
        for (std::size_t w : z_.ones()) {
            support.set(w);
        }
        return support.popcount();
    }

    bool is_identity_letters() const noexcept { return !x_.any() && !z_.any(); }

    std::string to_string() const;

    /// Left multiplication in place: *this = *this * rhs.
    PauliString &operator*=(const PauliString &rhs);

    friend PauliString operator*(PauliString a, const PauliString &b) { return a *= b; }

    friend bool operator==(const PauliString &a, const PauliString &b) noexcept {
        return a.phase_ == b.phase_ && a.x_ == b.x_ && a.z_ == b.z_;
    }

    /// True when both strings have equal letters, ignoring the coefficient.
    bool same_letters(const PauliString &other) const noexcept { return x_ == other.x_ && z_ == other.z_; }

   private:
    BitVector x_;
    BitVector z_;
    std::uint8_t phase_ = 0;
};

/// Symplectic inner product parity.
inline bool anticommutes(const PauliString &a, const PauliString &b) {
    if (a.size() != b.size()) {
        throw DimensionError("commutation of Pauli strings with different qubit counts");
    }
    std::size_t c = BitVector::and_popcount(a.xs(), b.zs()) + BitVector::and_popcount(a.zs(), b.xs());
    return (c & 1) != 0;
}

inline bool commutes(const PauliString &a, const PauliString &b) { return !anticommutes(a, b); }

inline PauliString &PauliString::operator*=(const PauliString &rhs) {
    if (size() != rhs.size()) {
        throw DimensionError("product of Pauli strings with different qubit counts");
    }
    // Z^{z1} X^{x2} = (-1)^{z1.x2} X^{x2} Z^{z1}
    std::size_t swaps = BitVector::and_popcount(z_, rhs.x_);
    add_phase(rhs.phase_ + static_cast<int>(2 * (swaps & 1)));
    x_ ^= rhs.x_;
    z_ ^= rhs.z_;
    return *this;
}

/// Tensor product a (qubits 0..) followed by b.
inline PauliString tensor(const PauliString &a, const PauliString &b) {
    PauliString out(a.size() + b.size());
    for (std::size_t q = 0; q < a.size(); q++) {
        out.xs().set(q, a.x(q));
        out.zs().set(q, a.z(q));
    }
    for (std::size_t q = 0; q < b.size(); q++) {
        out.xs().set(a.size() + q, b.x(q));
        out.zs().set(a.size() + q, b.z(q));
    }
    out.set_phase(a.phase() + b.phase());
    return out;
}

/// Inverse operator, which equals the adjoint.
inline PauliString inverse(PauliString p) {
    // (i^p X^x Z^z)^-1 = i^-p Z^z X^x = i^-p (-1)^{x.z} X^x Z^z
    int flips = static_cast<int>(p.y_count() & 1);
    p.set_phase(-p.phase() + 2 * flips);
    return p;
}

inline void PauliString::set_letter(std::size_t q, char c) {
    int old_y = (x_.get(q) && z_.get(q)) ? 1 : 0;
    bool xv = c == 'X' || c == 'Y';
    bool zv = c == 'Z' || c == 'Y';
    if (!xv && !zv && c != 'I') {
        throw InvalidOperand(std::string("not a Pauli letter: ") + c);
    }
    x_.set(q, xv);
    z_.set(q, zv);
    int new_y = c == 'Y' ? 1 : 0;
    add_phase(new_y - old_y);
}

inline std::string PauliString::to_string() const {
    static constexpr const char *prefix[4] = {"+", "+i", "-", "-i"};
    std::string out = prefix[coefficient_phase()];
    out.reserve(out.size() + size());
    for (std::size_t q = 0; q < size(); q++) {
        out.push_back(letter(q));
    }
    return out;
}

inline PauliString PauliString::parse(std::string_view text) {
    std::size_t pos = 0;
    int coefficient = 0;
    if (text.substr(0, 1) == "+") {
        pos = 1;
    } else if (text.substr(0, 1) == "-") {
        pos = 1;
        coefficient = 2;
    } else if (text.substr(0, 3) == "\xE2\x88\x92") {
        pos = 3;
        coefficient = 2;
    }
    if (text.substr(pos, 1) == "i") {
        pos++;
        coefficient += 1;
    }
    std::size_t start = pos;
    if (start == text.size()) {
        throw ParseError("empty Pauli string", 1, start + 1);
    }
    PauliString out(text.size() - start);
    for (std::size_t q = 0; pos < text.size(); pos++, q++) {
        char c = text[pos];
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
            throw ParseError(std::string("unexpected character '") + c + "' in Pauli string", 1, pos + 1);
        }
        out.set_letter(q, c);
    }
    out.add_phase(coefficient);
    return out;
}

}  // namespace locc

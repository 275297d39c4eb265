#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "pauli.hpp"

namespace locc {

/// Gaussian integer re + i*im.
struct GaussInt {
    std::int64_t re = 0;
    std::int64_t im = 0;

    friend GaussInt operator+(GaussInt a, GaussInt b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussInt operator-(GaussInt a, GaussInt b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussInt operator*(GaussInt a, GaussInt b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(GaussInt a, GaussInt b) { return a.re == b.re && a.im == b.im; }
    GaussInt conj() const { return {re, -im}; }
    bool is_zero() const { return re == 0 && im == 0; }
    bool is_even() const { return re % 2 == 0 && im % 2 == 0; }
};

/// Signed Pauli letter, the image of a Pauli under Clifford conjugation.
struct SignedPauli {
    char letter = 'I';
    int sign = 1;
    friend bool operator==(const SignedPauli &a, const SignedPauli &b) {
        return a.letter == b.letter && a.sign == b.sign;
    }
};

/// Exact 2x2 unitary with entries (a + b i) / sqrt(2)^k sharing one scale exponent k.
///
/// Kept normalised (k reduced while every entry is even), which makes the
/// representation canonical: equal matrices compare equal field-by-field.
class SingleQubitUnitary {
   public:
    using Entries = std::array<GaussInt, 4>;  // row-major

    SingleQubitUnitary() : m_{GaussInt{1, 0}, GaussInt{}, GaussInt{}, GaussInt{1, 0}}, k_(0) {}

    /// Throws InvalidOperand if the matrix is not unitary.
    static SingleQubitUnitary from_entries(const Entries &m, int k) {
        SingleQubitUnitary u(m, k);
        SingleQubitUnitary p = u * u.dagger();
        if (!(p == SingleQubitUnitary())) {
            throw InvalidOperand("matrix is not unitary");
        }
        return u;
    }

    static SingleQubitUnitary identity() { return {}; }
    static SingleQubitUnitary pauli_x() { return raw({0, 0}, {1, 0}, {1, 0}, {0, 0}, 0); }
    static SingleQubitUnitary pauli_y() { return raw({0, 0}, {0, -1}, {0, 1}, {0, 0}, 0); }
    static SingleQubitUnitary pauli_z() { return raw({1, 0}, {0, 0}, {0, 0}, {-1, 0}, 0); }
    static SingleQubitUnitary hadamard() { return raw({1, 0}, {1, 0}, {1, 0}, {-1, 0}, 1); }
    static SingleQubitUnitary phase_s() { return raw({1, 0}, {0, 0}, {0, 0}, {0, 1}, 0); }
    static SingleQubitUnitary phase_sdg() { return raw({1, 0}, {0, 0}, {0, 0}, {0, -1}, 0); }
    /// (I + iY)/sqrt2, i.e. exp(i pi/4 Y).
    static SingleQubitUnitary sqrt_iy() { return raw({1, 0}, {1, 0}, {-1, 0}, {1, 0}, 1); }
    /// (I - iY)/sqrt2.
    static SingleQubitUnitary sqrt_miy() { return raw({1, 0}, {-1, 0}, {1, 0}, {1, 0}, 1); }
    /// (I + iZ)/sqrt2.
    static SingleQubitUnitary sqrt_iz() { return raw({1, 1}, {0, 0}, {0, 0}, {1, -1}, 1); }
    /// (I - iZ)/sqrt2.
    static SingleQubitUnitary sqrt_miz() { return raw({1, -1}, {0, 0}, {0, 0}, {1, 1}, 1); }
    /// (I + iX)/sqrt2.
    static SingleQubitUnitary sqrt_ix() { return raw({1, 0}, {0, 1}, {0, 1}, {1, 0}, 1); }
    /// (I - iX)/sqrt2.
    static SingleQubitUnitary sqrt_mix() { return raw({1, 0}, {0, -1}, {0, -1}, {1, 0}, 1); }
    /// Global phase exp(i pi/4).
    static SingleQubitUnitary omega() { return raw({1, 1}, {0, 0}, {0, 0}, {1, 1}, 1); }

    static SingleQubitUnitary pauli(char letter) {
        switch (letter) {
            case 'I':
                return identity();
            case 'X':
                return pauli_x();
            case 'Y':
                return pauli_y();
            case 'Z':
                return pauli_z();
            default:
                throw InvalidOperand(std::string("not a Pauli letter: ") + letter);
        }
    }

    const Entries &entries() const noexcept { return m_; }
    int scale_exponent() const noexcept { return k_; }

    friend SingleQubitUnitary operator*(const SingleQubitUnitary &a, const SingleQubitUnitary &b) {
        for (const auto &e : a.m_) {
            check_bound(e);
        }
        for (const auto &e : b.m_) {
            check_bound(e);
        }
        Entries r{a.m_[0] * b.m_[0] + a.m_[1] * b.m_[2], a.m_[0] * b.m_[1] + a.m_[1] * b.m_[3],
                  a.m_[2] * b.m_[0] + a.m_[3] * b.m_[2], a.m_[2] * b.m_[1] + a.m_[3] * b.m_[3]};
        return SingleQubitUnitary(r, a.k_ + b.k_);
    }

    friend bool operator==(const SingleQubitUnitary &a, const SingleQubitUnitary &b) {
        return a.k_ == b.k_ && a.m_ == b.m_;
    }

    SingleQubitUnitary dagger() const {
        return SingleQubitUnitary(Entries{m_[0].conj(), m_[2].conj(), m_[1].conj(), m_[3].conj()}, k_);
    }
    SingleQubitUnitary transpose() const { return SingleQubitUnitary(Entries{m_[0], m_[2], m_[1], m_[3]}, k_); }
    SingleQubitUnitary conjugate() const {
        return SingleQubitUnitary(Entries{m_[0].conj(), m_[1].conj(), m_[2].conj(), m_[3].conj()}, k_);
    }

    /// Equality up to a global phase.
    bool equal_up_to_phase(const SingleQubitUnitary &other) const {
        SingleQubitUnitary d = dagger() * other;
        return d.m_[1].is_zero() && d.m_[2].is_zero() && d.m_[0] == d.m_[3];
    }

    bool is_identity() const { return *this == identity(); }
    bool is_identity_up_to_phase() const { return equal_up_to_phase(identity()); }

    /// U P U^dag for P in {X, Y, Z}. Throws InvalidOperand if the image is not a signed Pauli.
    SignedPauli conjugate_pauli(char letter) const {
        SingleQubitUnitary image = *this * pauli(letter) * dagger();
        for (char c : {'X', 'Y', 'Z'}) {
            SingleQubitUnitary p = pauli(c);
            if (image == p) {
                return {c, 1};
            }
            if (image == negate(p)) {
                return {c, -1};
            }
        }
        throw InvalidOperand("unitary is not a Clifford");
    }

    bool is_clifford() const {
        try {
            conjugate_pauli('X');
            conjugate_pauli('Z');
            return true;
        } catch (const InvalidOperand &) {
            return false;
        }
    }

    /// Returns the Pauli letter P with this == +-P or +-iP up to global phase, if any.
    char as_pauli_up_to_phase() const {
        for (char c : {'I', 'X', 'Y', 'Z'}) {
            if (equal_up_to_phase(pauli(c))) {
                return c;
            }
        }
        return '\0';
    }

    std::array<std::complex<double>, 4> to_complex() const {
        double scale = std::pow(std::sqrt(2.0), -k_);
        std::array<std::complex<double>, 4> out;
        for (std::size_t i = 0; i < 4; i++) {
            out[i] = std::complex<double>(static_cast<double>(m_[i].re), static_cast<double>(m_[i].im)) * scale;
        }
        return out;
    }

    /// Exact Clifford (up to an eighth-root phase) closest to a floating-point matrix.
    /// Throws InvalidOperand when no such Clifford is within tol.
    static SingleQubitUnitary from_complex(const std::array<std::complex<double>, 4> &m, double tol = 1e-9);

    /// Shortest generator word for this matrix, e.g. "H·S". Throws InvalidOperand for non-Cliffords.
    std::string to_word() const;

    /// Parses a word of generator names separated by '·' or '*'. The rightmost factor acts first.
    static SingleQubitUnitary parse_word(std::string_view text);

    /// Generator names in tie-break order.
    static const std::vector<std::pair<std::string, SingleQubitUnitary>> &generators();

   private:
    SingleQubitUnitary(const Entries &m, int k) : m_(m), k_(k) { normalize(); }

    static SingleQubitUnitary raw(GaussInt a, GaussInt b, GaussInt c, GaussInt d, int k) {
        return SingleQubitUnitary(Entries{a, b, c, d}, k);
    }

    static SingleQubitUnitary negate(const SingleQubitUnitary &u) {
        Entries m = u.m_;
        for (auto &e : m) {
            e = GaussInt{-e.re, -e.im};
        }
        return SingleQubitUnitary(m, u.k_);
    }

    static void check_bound(const GaussInt &e) {
        constexpr std::int64_t limit = std::int64_t{1} << 30;
        if (std::llabs(e.re) >= limit || std::llabs(e.im) >= limit) {
            throw std::overflow_error("exact unitary entries exceed the representable range");
        }
    }

    void normalize() {
        while (k_ >= 2 && m_[0].is_even() && m_[1].is_even() && m_[2].is_even() && m_[3].is_even()) {
            for (auto &e : m_) {
                e.re /= 2;
                e.im /= 2;
            }
            k_ -= 2;
        }
    }

    using Key = std::tuple<int, std::int64_t, std::int64_t, std::int64_t, std::int64_t, std::int64_t, std::int64_t,
                           std::int64_t, std::int64_t>;

    Key key() const {
        return Key(k_, m_[0].re, m_[0].im, m_[1].re, m_[1].im, m_[2].re, m_[2].im, m_[3].re, m_[3].im);
    }

    static const std::map<Key, std::string> &word_table();

    Entries m_;
    int k_;
};

inline const std::vector<std::pair<std::string, SingleQubitUnitary>> &SingleQubitUnitary::generators() {
    static const std::vector<std::pair<std::string, SingleQubitUnitary>> gens = {
        {"X", pauli_x()},          {"Y", pauli_y()},           {"Z", pauli_z()},
        {"H", hadamard()},         {"S", phase_s()},           {"Sdg", phase_sdg()},
        {"sqrt(iY)", sqrt_iy()},   {"sqrt(-iY)", sqrt_miy()},  {"sqrt(iZ)", sqrt_iz()},
        {"sqrt(-iZ)", sqrt_miz()}, {"sqrt(iX)", sqrt_ix()},    {"sqrt(-iX)", sqrt_mix()},
        {"omega", omega()},
    };
    return gens;
}

inline const std::map<SingleQubitUnitary::Key, std::string> &SingleQubitUnitary::word_table() {
    static const std::map<Key, std::string> table = [] {
        std::map<Key, std::string> t;
        std::vector<std::pair<SingleQubitUnitary, std::string>> frontier{{identity(), "I"}};
        t.emplace(identity().key(), "I");
        while (!frontier.empty()) {
            std::vector<std::pair<SingleQubitUnitary, std::string>> next;
            for (const auto &[u, word] : frontier) {
                for (const auto &[name, g] : generators()) {
                    SingleQubitUnitary v = u * g;
                    if (t.emplace(v.key(), word == "I" ? name : word + "\xC2\xB7" + name).second) {
                        next.emplace_back(v, t.at(v.key()));
                    }
                }
            }
            frontier = std::move(next);
        }
        return t;
    }();
    return table;
}

inline SingleQubitUnitary SingleQubitUnitary::from_complex(const std::array<std::complex<double>, 4> &m, double tol) {
    for (const auto &[key, word] : word_table()) {
        SingleQubitUnitary u = parse_word(word);
        auto e = u.to_complex();
        double d = 0;
        for (std::size_t i = 0; i < 4; i++) {
            d = std::max(d, std::abs(e[i] - m[i]));
        }
        if (d <= tol) {
            return u;
        }
    }
    throw InvalidOperand("matrix is not a Clifford up to an eighth-root phase");
}

inline std::string SingleQubitUnitary::to_word() const {
    auto it = word_table().find(key());
    if (it == word_table().end()) {
        throw InvalidOperand("unitary is not a Clifford up to an eighth-root phase");
    }
    return it->second;
}

inline SingleQubitUnitary SingleQubitUnitary::parse_word(std::string_view text) {
    SingleQubitUnitary out;
    std::size_t pos = 0;
    bool any = false;
    while (pos <= text.size()) {
        std::size_t end = pos;
        std::size_t sep_len = 0;
        while (end < text.size()) {
            if (text[end] == '*') {
                sep_len = 1;
                break;
            }
            if (text.substr(end, 2) == "\xC2\xB7") {
                sep_len = 2;
                break;
            }
            end++;
        }
        std::string_view token = text.substr(pos, end - pos);
        while (!token.empty() && token.front() == ' ') {
            token.remove_prefix(1);
        }
        while (!token.empty() && token.back() == ' ') {
            token.remove_suffix(1);
        }
        if (token.empty()) {
            throw ParseError("empty factor in unitary word", 1, pos + 1);
        }
        bool found = false;
        if (token == "I") {
            found = true;
        } else {
            for (const auto &[name, g] : generators()) {
                if (token == name) {
                    out = out * g;
                    found = true;
                    break;
                }
            }
        }
        if (!found) {
            throw ParseError("unknown unitary name '" + std::string(token) + "'", 1, pos + 1);
        }
        any = true;
        if (sep_len == 0) {
            break;
        }
        pos = end + sep_len;
    }
    if (!any) {
        throw ParseError("empty unitary word", 1, 1);
    }
    return out;
}

/// Conjugates the factor at qubit q of a Pauli string: P -> U P U^dag.
inline void conjugate_qubit(PauliString &p, std::size_t q, const SignedPauli &image_x, const SignedPauli &image_z,
                            const SignedPauli &image_y) {
    char c = p.letter(q);
    if (c == 'I') {
        return;
    }
    const SignedPauli &img = c == 'X' ? image_x : (c == 'Z' ? image_z : image_y);
    p.set_letter(q, img.letter);
    if (img.sign < 0) {
        p.add_phase(2);
    }
}

/// Tensor product of single-qubit Cliffords, stored sparsely (absent qubits act as identity).
class LocalCliffordLayer {
   public:
    LocalCliffordLayer() = default;
    explicit LocalCliffordLayer(std::size_t num_qubits) : n_(num_qubits) {}

    std::size_t size() const noexcept { return n_; }

    /// Throws InvalidOperand for a non-Clifford or an out-of-range qubit.
    void set(std::size_t q, const SingleQubitUnitary &u) {
        if (q >= n_) {
            throw InvalidOperand("qubit index out of range for local layer");
        }
        if (!u.is_clifford()) {
            throw InvalidOperand("local layer entries must be Clifford");
        }
        if (u.is_identity()) {
            ops_.erase(q);
        } else {
            ops_[q] = u;
        }
    }

    SingleQubitUnitary get(std::size_t q) const {
        auto it = ops_.find(q);
        return it == ops_.end() ? SingleQubitUnitary() : it->second;
    }

    const std::map<std::size_t, SingleQubitUnitary> &ops() const noexcept { return ops_; }

    bool is_identity() const noexcept { return ops_.empty(); }

    LocalCliffordLayer dagger() const {
        LocalCliffordLayer out(n_);
        for (const auto &[q, u] : ops_) {
            out.ops_[q] = u.dagger();
        }
        return out;
    }

    /// Per-qubit product this * other (other acts first).
    LocalCliffordLayer compose(const LocalCliffordLayer &other) const {
        if (other.n_ != n_) {
            throw DimensionError("composing local layers of different sizes");
        }
        LocalCliffordLayer out = other;
        for (const auto &[q, u] : ops_) {
            out.set(q, u * other.get(q));
        }
        return out;
    }

    /// U P U^dag.
    PauliString conjugate(PauliString p) const {
        if (p.size() != n_) {
            throw DimensionError("conjugating a Pauli string by a layer of a different size");
        }
        for (const auto &[q, u] : ops_) {
            conjugate_qubit(p, q, u.conjugate_pauli('X'), u.conjugate_pauli('Z'), u.conjugate_pauli('Y'));
        }
        return p;
    }

   private:
    std::size_t n_ = 0;
    std::map<std::size_t, SingleQubitUnitary> ops_;
};

}  // namespace locc

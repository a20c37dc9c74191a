#pragma once

// Functoriality of k_+ -> H^*(Conf(k, R^d); Q) on pointed maps of finite
// sets. A pointed map f: k_+ -> l_+ acts as the algebra map determined by
// w(a,b) -> w(f(a), f(b)), where the image vanishes when f(a) = f(b) or
// either endpoint lands on the basepoint. This is the Q-linear dual of the
// right Gamma-module k_+ -> H_*(Conf(k, R^d); Q).

#include <cstddef>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "linkshom/arnold_algebra.hpp"
#include "linkshom/exact_linalg.hpp"

namespace linkshom {

/// A basepoint-preserving map k_+ -> l_+. Point i in 1..k goes to table[i-1]
/// in 0..l; 0 is the basepoint.
class PointedMap {
public:
    PointedMap() = default;
    PointedMap(int source_size, int target_size, std::vector<int> table);

    static PointedMap identity(int k);
    /// Every point goes to the basepoint.
    static PointedMap constant(int k, int l);

    [[nodiscard]] int source_size() const { return k_; }
    [[nodiscard]] int target_size() const { return l_; }
    [[nodiscard]] const std::vector<int>& table() const { return table_; }
    [[nodiscard]] int operator()(int i) const { return i == 0 ? 0 : table_[static_cast<std::size_t>(i - 1)]; }

    friend bool operator==(const PointedMap&, const PointedMap&) = default;

    /// `k l : i1 i2 ... ik`
    [[nodiscard]] std::string to_text() const;
    static PointedMap parse(std::string_view text);

private:
    int k_ = 0;
    int l_ = 0;
    std::vector<int> table_;
};

struct PointedMapHash {
    std::size_t operator()(const PointedMap& f) const noexcept;
};

/// First f, then g. Requires f.target_size() == g.source_size().
[[nodiscard]] PointedMap compose(const PointedMap& f, const PointedMap& g);

/// Image of x under the algebra map induced by f.
[[nodiscard]] AlgebraElement apply(const PointedMap& f, const AlgebraElement& x, GenParity parity);

/// Appends coef * f(m) to out (unmerged). The hot path of complex assembly.
void accumulate_image(const PointedMap& f, const OmegaMonomial& m, GenParity parity, std::int64_t coef,
                      std::vector<IntTerm>& out);

struct InducedMap {
    PointedMap map;
    int word_length = 0;
    GenParity parity = GenParity::odd;
    /// dimension(l, t) x dimension(k, t), columns indexed by enumerate_basis(k, t).
    SparseRationalMatrix matrix;
};

[[nodiscard]] InducedMap induced_map(const PointedMap& f, int t, GenParity parity);

/// Concurrent memo of induced maps keyed by (f, t, parity). Entries are
/// idempotent, so concurrent writers racing on a key are harmless.
class InducedMapCache {
public:
    std::shared_ptr<const InducedMap> get(const PointedMap& f, int t, GenParity parity);
    [[nodiscard]] std::size_t size() const;

private:
    struct Key {
        PointedMap map;
        int t;
        GenParity parity;
        friend bool operator==(const Key&, const Key&) = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& key) const noexcept;
    };
    mutable std::shared_mutex mutex_;
    std::unordered_map<Key, std::shared_ptr<const InducedMap>, KeyHash> entries_;
};

// ---------------------------------------------------------------------------
// Homology-side oracle

/// A Poisson monomial basis element of H_*(Conf(k, R^d)) in word length t,
/// stored as blocks of a partition of 1..k (block order by minimum).
/// Blocks of size 2 and 3 use the words paired with admissible monomials:
///   {a<b}     <-> [x_a, x_b]                    <-> w(a,b)
///   {x<y<z}   <-> [[x_p, x_z], x_q]             <-> w(x,y) w(p,z), {p,q} = {x,y}
/// Larger blocks use left-normed words [x_min, x_s2, ..., x_ss].
struct PoissonBasisElement {
    int k = 0;
    /// One entry per block; each block lists its leaves in bracket order,
    /// left-normed: [[[l0, l1], l2], ...].
    std::vector<std::vector<int>> blocks;

    [[nodiscard]] std::string to_text() const;
    friend bool operator==(const PoissonBasisElement&, const PoissonBasisElement&) = default;
};

/// Basis of the homology of Conf(k) in word length t, in the oracle's order.
[[nodiscard]] std::vector<PoissonBasisElement> poisson_basis(int k, int t);

/// The admissible monomial paired with a Poisson basis element whose blocks
/// all have size <= 3.
[[nodiscard]] OmegaMonomial paired_monomial(const PoissonBasisElement& element);

/// Matrix of the homology-side structure map H_*(Conf(l)) -> H_*(Conf(k))
/// induced by f: k_+ -> l_+, computed by substitution x_j -> prod_{f(i)=j} x_i
/// and the Leibniz rule, with [a, 1] = 0. Rows index poisson_basis(k, t),
/// columns poisson_basis(l, t). Limited to k, l <= 4.
[[nodiscard]] SparseRationalMatrix leibniz_oracle(const PointedMap& f, int t, GenParity parity = GenParity::even);

}  // namespace linkshom

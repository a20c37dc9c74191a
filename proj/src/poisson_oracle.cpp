// Homology-side structure maps of H_*(Conf(-, R^d); Q) computed on Poisson
// monomials. Used only as an independent check of the cohomology-side maps,
// so everything here favours directness over speed.

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>

#include "linkshom/gamma_maps.hpp"

namespace linkshom {

namespace {

constexpr int max_oracle_points = 4;

// Binary Lie tree with letter leaves.
struct Node;
using Tree = std::shared_ptr<const Node>;
struct Node {
    int letter = 0;  // > 0 for leaves
    Tree left;
    Tree right;
};

Tree leaf(int letter) { return std::make_shared<const Node>(Node{letter, nullptr, nullptr}); }
Tree bracket(Tree l, Tree r) { return std::make_shared<const Node>(Node{0, std::move(l), std::move(r)}); }

void collect_leaves(const Tree& t, std::vector<int>& out)
{
    if (t->letter > 0) {
        out.push_back(t->letter);
        return;
    }
    collect_leaves(t->left, out);
    collect_leaves(t->right, out);
}

int leaf_count(const Tree& t) { return t->letter > 0 ? 1 : leaf_count(t->left) + leaf_count(t->right); }

Tree left_normed(const std::vector<int>& leaves)
{
    Tree t = leaf(leaves.front());
    for (std::size_t i = 1; i < leaves.size(); ++i) t = bracket(t, leaf(leaves[i]));
    return t;
}

// Degree parity of a tree in H_*(Conf): (leaves - 1) brackets of degree d-1.
int tree_parity(const Tree& t, GenParity parity)
{
    return parity == GenParity::odd ? (leaf_count(t) - 1) % 2 : 0;
}

// Poisson polynomial: sum of coef * (ordered product of trees).
struct PMonomial {
    std::int64_t coef = 1;
    std::vector<Tree> factors;
};
using PPoly = std::vector<PMonomial>;

int sign_of(int exponent) { return (exponent % 2 == 0) ? 1 : -1; }

// [U, V] for products of trees. The bracket has degree d-1 and is a graded
// derivation in each argument; brackets with the unit vanish.
PPoly bracket_monomials(const PMonomial& u, const PMonomial& v, GenParity parity)
{
    PPoly out;
    const int e = parity == GenParity::odd ? 1 : 0;
    for (std::size_t i = 0; i < u.factors.size(); ++i) {
        int after = 0;
        for (std::size_t k = i + 1; k < u.factors.size(); ++k) after += tree_parity(u.factors[k], parity);
        const int move_sign = sign_of(tree_parity(u.factors[i], parity) * after);
        int before = 0;
        for (std::size_t j = 0; j < v.factors.size(); ++j) {
            const int pass_sign = sign_of((tree_parity(u.factors[i], parity) + e) * before);
            PMonomial term;
            term.coef = u.coef * v.coef * move_sign * pass_sign;
            for (std::size_t k = 0; k < u.factors.size(); ++k)
                if (k != i) term.factors.push_back(u.factors[k]);
            for (std::size_t k = 0; k < j; ++k) term.factors.push_back(v.factors[k]);
            term.factors.push_back(bracket(u.factors[i], v.factors[j]));
            for (std::size_t k = j + 1; k < v.factors.size(); ++k) term.factors.push_back(v.factors[k]);
            out.push_back(std::move(term));
            before += tree_parity(v.factors[j], parity);
        }
    }
    return out;
}

PPoly bracket_polys(const PPoly& a, const PPoly& b, GenParity parity)
{
    PPoly out;
    for (const auto& u : a)
        for (const auto& v : b) {
            auto terms = bracket_monomials(u, v, parity);
            out.insert(out.end(), terms.begin(), terms.end());
        }
    return out;
}

// Substitutes every leaf j of t by the product of the letters in f^{-1}(j).
PPoly substitute(const Tree& t, const std::vector<std::vector<int>>& preimage, GenParity parity)
{
    if (t->letter > 0) {
        PMonomial m;
        for (int i : preimage[static_cast<std::size_t>(t->letter)]) m.factors.push_back(leaf(i));
        return {m};
    }
    return bracket_polys(substitute(t->left, preimage, parity), substitute(t->right, preimage, parity), parity);
}

// Expansion of a tree in the free graded associative algebra, after the
// suspension that makes the bracket a graded commutator. Signs differ from
// the unsuspended convention by a factor depending only on the tree shape.
using AssocPoly = std::map<std::vector<int>, std::int64_t>;

AssocPoly expand(const Tree& t, GenParity parity)
{
    if (t->letter > 0) return {{{t->letter}, 1}};
    AssocPoly l = expand(t->left, parity);
    AssocPoly r = expand(t->right, parity);
    const int gen = parity == GenParity::odd ? 1 : 0;
    const int swap = sign_of(gen * leaf_count(t->left) * gen * leaf_count(t->right));
    AssocPoly out;
    for (const auto& [wl, cl] : l)
        for (const auto& [wr, cr] : r) {
            std::vector<int> lr = wl;
            lr.insert(lr.end(), wr.begin(), wr.end());
            out[lr] += cl * cr;
            std::vector<int> rl = wr;
            rl.insert(rl.end(), wl.begin(), wl.end());
            out[rl] -= swap * cl * cr;
        }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

// Coordinates in the left-normed basis [x_min, x_s2, ...]: the coefficient
// of the word starting with x_min followed by the remaining letters.
std::vector<Rational> left_normed_coordinates(const Tree& t, const std::vector<int>& sorted_block,
                                              GenParity parity)
{
    AssocPoly p = expand(t, parity);
    std::vector<int> rest(sorted_block.begin() + 1, sorted_block.end());
    std::vector<Rational> coords;
    do {
        std::vector<int> word{sorted_block.front()};
        word.insert(word.end(), rest.begin(), rest.end());
        auto it = p.find(word);
        coords.emplace_back(it == p.end() ? 0 : it->second);
    } while (std::next_permutation(rest.begin(), rest.end()));
    return coords;
}

// Chosen leaf orders for a block, matching the documented pairing.
std::vector<std::vector<int>> block_basis(const std::vector<int>& sorted_block)
{
    const auto s = sorted_block.size();
    if (s == 1) return {sorted_block};
    if (s == 3) {
        const int x = sorted_block[0];
        const int y = sorted_block[1];
        const int z = sorted_block[2];
        return {{x, z, y}, {y, z, x}};
    }
    std::vector<std::vector<int>> out;
    std::vector<int> rest(sorted_block.begin() + 1, sorted_block.end());
    do {
        std::vector<int> word{sorted_block.front()};
        word.insert(word.end(), rest.begin(), rest.end());
        out.push_back(std::move(word));
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
}

// Solves C x = b over Q for a small invertible C given by columns.
std::vector<Rational> solve(std::vector<std::vector<Rational>> columns, std::vector<Rational> rhs)
{
    const std::size_t n = rhs.size();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) a[r][c] = columns[c][r];
        a[r][n] = rhs[r];
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c].is_zero()) ++piv;
        if (piv == n) throw std::logic_error("oracle block basis is singular");
        std::swap(a[piv], a[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c].is_zero()) continue;
            Rational f = a[r][c] / a[c][c];
            for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t r = 0; r < n; ++r) x[r] = a[r][n] / a[r][r];
    return x;
}

void partitions_rec(std::vector<int>& assignment, int next, int k, int blocks,
                    std::vector<std::vector<std::vector<int>>>& out)
{
    if (next > k) {
        std::vector<std::vector<int>> parts(static_cast<std::size_t>(blocks));
        for (int i = 1; i <= k; ++i) parts[static_cast<std::size_t>(assignment[static_cast<std::size_t>(i)])].push_back(i);
        out.push_back(std::move(parts));
        return;
    }
    for (int b = 0; b <= blocks; ++b) {
        assignment[static_cast<std::size_t>(next)] = b;
        partitions_rec(assignment, next + 1, k, std::max(blocks, b + 1), out);
    }
}

std::vector<std::vector<std::vector<int>>> set_partitions(int k)
{
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<int> assignment(static_cast<std::size_t>(k) + 1, 0);
    partitions_rec(assignment, 1, k, 0, out);
    return out;
}

}  // namespace

std::string PoissonBasisElement::to_text() const
{
    std::string out;
    for (const auto& block : blocks) {
        std::string word = "x" + std::to_string(block.front());
        for (std::size_t i = 1; i < block.size(); ++i) word = "[" + word + ",x" + std::to_string(block[i]) + "]";
        if (!out.empty()) out += "*";
        out += word;
    }
    return out.empty() ? "1" : out;
}

std::vector<PoissonBasisElement> poisson_basis(int k, int t)
{
    if (k < 0 || t < 0) throw std::invalid_argument("poisson_basis requires k, t >= 0");
    std::vector<PoissonBasisElement> out;
    for (const auto& parts : set_partitions(k)) {
        if (k - static_cast<int>(parts.size()) != t) continue;
        std::vector<std::vector<std::vector<int>>> choices;
        for (const auto& block : parts) choices.push_back(block_basis(block));
        std::vector<std::size_t> pick(choices.size(), 0);
        bool more = true;
        while (more) {
            PoissonBasisElement e{k, {}};
            for (std::size_t b = 0; b < choices.size(); ++b) e.blocks.push_back(choices[b][pick[b]]);
            out.push_back(std::move(e));
            // Odometer over the per-block choices, last block fastest.
            more = false;
            for (std::size_t b = choices.size(); b-- > 0;) {
                if (++pick[b] < choices[b].size()) {
                    more = true;
                    break;
                }
                pick[b] = 0;
            }
        }
    }
    return out;
}

OmegaMonomial paired_monomial(const PoissonBasisElement& element)
{
    std::vector<OmegaPair> factors;
    auto pair = [](int a, int b) {
        return OmegaPair{static_cast<std::uint8_t>(std::min(a, b)), static_cast<std::uint8_t>(std::max(a, b))};
    };
    for (const auto& block : element.blocks) {
        if (block.size() == 1) continue;
        if (block.size() == 2) {
            factors.push_back(pair(block[0], block[1]));
        } else if (block.size() == 3) {
            std::vector<int> sorted = block;
            std::sort(sorted.begin(), sorted.end());
            factors.push_back(pair(sorted[0], sorted[1]));
            factors.push_back(pair(block[0], block[1]));
        } else {
            throw std::invalid_argument("pairing is only defined for blocks of size <= 3");
        }
    }
    std::sort(factors.begin(), factors.end());
    return OmegaMonomial::from_factors(element.k, factors);
}

SparseRationalMatrix leibniz_oracle(const PointedMap& f, int t, GenParity parity)
{
    const int k = f.source_size();
    const int l = f.target_size();
    if (k > max_oracle_points || l > max_oracle_points)
        throw std::invalid_argument("leibniz_oracle is limited to k, l <= 4");
    const auto rows = poisson_basis(k, t);
    const auto cols = poisson_basis(l, t);

    std::vector<std::vector<int>> preimage(static_cast<std::size_t>(l) + 1);
    std::vector<int> killed;
    for (int i = 1; i <= k; ++i) {
        if (f(i) == 0)
            killed.push_back(i);
        else
            preimage[static_cast<std::size_t>(f(i))].push_back(i);
    }

    std::vector<SparseRationalMatrix::Triplet> triplets;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        PPoly image{PMonomial{}};
        for (const auto& block : cols[c].blocks) {
            PPoly factor = substitute(left_normed(block), preimage, parity);
            PPoly product;
            for (const auto& u : image)
                for (const auto& v : factor) {
                    PMonomial m{u.coef * v.coef, u.factors};
                    m.factors.insert(m.factors.end(), v.factors.begin(), v.factors.end());
                    product.push_back(std::move(m));
                }
            image = std::move(product);
        }
        for (auto& m : image)
            for (int i : killed) m.factors.push_back(leaf(i));

        for (auto& m : image) {
            // Order factors by their smallest letter, with Koszul signs.
            std::vector<std::pair<int, Tree>> keyed;
            for (const auto& tree : m.factors) {
                std::vector<int> leaves;
                collect_leaves(tree, leaves);
                keyed.emplace_back(*std::min_element(leaves.begin(), leaves.end()), tree);
            }
            std::int64_t coef = m.coef;
            for (std::size_t i = 1; i < keyed.size(); ++i)
                for (std::size_t j = i; j > 0 && keyed[j].first < keyed[j - 1].first; --j) {
                    coef *= sign_of(tree_parity(keyed[j].second, parity) * tree_parity(keyed[j - 1].second, parity));
                    std::swap(keyed[j], keyed[j - 1]);
                }
            // Expand every block in its chosen basis and take the product.
            std::vector<std::pair<std::vector<std::vector<int>>, Rational>> expansion{{{}, Rational(coef)}};
            for (const auto& [lo, tree] : keyed) {
                std::vector<int> block;
                collect_leaves(tree, block);
                std::sort(block.begin(), block.end());
                auto chosen = block_basis(block);
                std::vector<Rational> coords;
                if (block.size() == 1) {
                    coords = {Rational(1)};
                } else {
                    std::vector<std::vector<Rational>> basis_cols;
                    for (const auto& word : chosen)
                        basis_cols.push_back(left_normed_coordinates(left_normed(word), block, parity));
                    coords = solve(basis_cols, left_normed_coordinates(tree, block, parity));
                }
                decltype(expansion) next;
                for (const auto& [blocks, value] : expansion)
                    for (std::size_t i = 0; i < chosen.size(); ++i) {
                        if (coords[i].is_zero()) continue;
                        auto extended = blocks;
                        extended.push_back(chosen[i]);
                        next.emplace_back(std::move(extended), value * coords[i]);
                    }
                expansion = std::move(next);
            }
            for (const auto& [blocks, value] : expansion) {
                PoissonBasisElement e{k, blocks};
                auto it = std::find(rows.begin(), rows.end(), e);
                if (it == rows.end()) throw std::logic_error("oracle produced a term outside the basis");
                triplets.emplace_back(static_cast<std::size_t>(it - rows.begin()), c, value);
            }
        }
    }
    return SparseRationalMatrix::from_triplets(rows.size(), cols.size(), std::move(triplets));
}

}  // namespace linkshom

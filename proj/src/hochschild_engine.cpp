#include "linkshom/hochschild_engine.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "linkshom/errors.hpp"
#include "linkshom/gamma_maps.hpp"
#include "linkshom/series_tools.hpp"

namespace linkshom {

namespace {

std::string where(int m, int n, int d, int t, int p)
{
    return " at (m=" + std::to_string(m) + ", n=" + std::to_string(n) + ", d=" + std::to_string(d) +
           ", t=" + std::to_string(t) + ", p=" + std::to_string(p) + ")";
}

std::uint64_t full_mask(int p) { return p == 0 ? 0 : (((1ULL << static_cast<unsigned>(p)) - 1) << 1U); }

// Depth-first walk over admissible monomials whose touched simplices cover
// every position 1..p. Factors are chosen with increasing b, then a, so the
// visit order is ascending.
class CoveringWalker {
public:
    CoveringWalker(const PointedSimplicialSet& x, int p, int t)
        : points_(x.points(p)), t_(t), n_(x.sphere_dimension()), full_(full_mask(p))
    {
        if (points_ > OmegaMonomial::max_points)
            throw std::invalid_argument("level " + std::to_string(p) + " has too many simplices for the algebra");
        if (static_cast<std::size_t>(t) > OmegaMonomial::max_word_length)
            throw std::invalid_argument("word length exceeds supported maximum");
        masks_.resize(static_cast<std::size_t>(points_) + 1);
        for (int id = 1; id <= points_; ++id) masks_[static_cast<std::size_t>(id)] = x.jump_mask(p, id);
    }

    template <class Visit>
    void run(Visit&& visit)
    {
        visit_depth(0, 0, 0, visit);
    }

private:
    template <class Visit>
    void visit_depth(int depth, int last_b, std::uint64_t covered, Visit& visit)
    {
        if (depth == t_) {
            if (covered == full_) visit(OmegaMonomial(points_, std::span<const OmegaPair>(factors_.data(), static_cast<std::size_t>(t_)), OmegaMonomial::trusted));
            return;
        }
        const int remaining = t_ - depth - 1;
        for (int b = last_b + 1; b <= points_ - remaining; ++b) {
            const std::uint64_t with_b = covered | masks_[static_cast<std::size_t>(b)];
            for (int a = 1; a < b; ++a) {
                const std::uint64_t next = with_b | masks_[static_cast<std::size_t>(a)];
                // Every later factor touches at most two new simplices.
                if (std::popcount(full_ & ~next) > 2 * n_ * remaining) continue;
                factors_[static_cast<std::size_t>(depth)] = {static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)};
                visit_depth(depth + 1, b, next, visit);
            }
        }
    }

    int points_;
    int t_;
    int n_;
    std::uint64_t full_;
    std::vector<std::uint64_t> masks_;
    std::array<OmegaPair, OmegaMonomial::max_word_length> factors_{};
};

bool is_covering(const OmegaMonomial& mono, const std::vector<std::uint64_t>& masks, std::uint64_t full)
{
    std::uint64_t covered = 0;
    for (const auto& f : mono.factors()) covered |= masks[f.a] | masks[f.b];
    return covered == full;
}

std::vector<std::uint64_t> level_masks(const PointedSimplicialSet& x, int p)
{
    std::vector<std::uint64_t> masks(static_cast<std::size_t>(x.points(p)) + 1, 0);
    for (int id = 1; id <= x.points(p); ++id) masks[static_cast<std::size_t>(id)] = x.jump_mask(p, id);
    return masks;
}

std::size_t index_in(const std::vector<OmegaMonomial>& basis, const OmegaMonomial& m)
{
    auto it = std::lower_bound(basis.begin(), basis.end(), m);
    if (it == basis.end() || *it != m) return basis.size();
    return static_cast<std::size_t>(it - basis.begin());
}

// Alternating face sum on the covering basis, projected onto covering terms.
SparseIntMatrix covering_boundary(const PointedSimplicialSet& x, int p, GenParity parity,
                                  const std::vector<OmegaMonomial>& src, const std::vector<OmegaMonomial>& dst,
                                  const std::string& context)
{
    const auto masks = level_masks(x, p - 1);
    const auto full = full_mask(p - 1);
    SparseIntMatrix out(dst.size());
    out.reserve(src.size(), src.size() * static_cast<std::size_t>(p + 1));
    std::vector<IntTerm> terms;
    std::vector<SparseIntMatrix::Entry> column;
    for (const auto& y : src) {
        terms.clear();
        for (int i = 0; i <= p; ++i) accumulate_image(x.face(p, i), y, parity, (i % 2 == 0) ? 1 : -1, terms);
        merge_terms(terms);
        column.clear();
        for (const auto& [mono, c] : terms) {
            if (!is_covering(mono, masks, full)) continue;
            auto row = index_in(dst, mono);
            if (row == dst.size())
                throw InvariantViolation("covering image " + mono.to_text() + " missing from the basis" + context);
            if (c > INT32_MAX || c < INT32_MIN) throw std::overflow_error("boundary coefficient exceeds 32 bits");
            column.push_back({static_cast<std::uint32_t>(row), static_cast<std::int32_t>(c)});
        }
        out.append_column(column);
    }
    return out;
}

// Exact check that lower * upper vanishes, column by column.
bool composition_vanishes(const SparseIntMatrix& lower, const SparseIntMatrix& upper)
{
    std::vector<std::int64_t> acc(lower.rows(), 0);
    std::vector<std::uint32_t> touched;
    for (std::size_t c = 0; c < upper.cols(); ++c) {
        touched.clear();
        for (const auto& e : upper.column(c))
            for (const auto& f : lower.column(e.row)) {
                if (acc[f.row] == 0) touched.push_back(f.row);
                acc[f.row] += static_cast<std::int64_t>(e.value) * f.value;
            }
        bool zero = true;
        for (auto r : touched) {
            if (acc[r] != 0) zero = false;
            acc[r] = 0;
        }
        if (!zero) return false;
    }
    return true;
}

// Every s_j(y), y covering at level p-1, must be non-covering at level p, and
// its boundary must have no covering component.
void check_well_defined(const PointedSimplicialSet& x, int p, GenParity parity, const std::vector<OmegaMonomial>& lower,
                        const std::string& context)
{
    const auto masks_p = level_masks(x, p);
    const auto masks_lower = level_masks(x, p - 1);
    const auto full_p = full_mask(p);
    const auto full_lower = full_mask(p - 1);
    std::vector<IntTerm> image;
    std::vector<IntTerm> terms;
    for (int j = 0; j <= p - 1; ++j) {
        const auto& s = x.degeneracy(p - 1, j);
        for (const auto& y : lower) {
            image.clear();
            accumulate_image(s, y, parity, 1, image);
            if (image.size() != 1 || image[0].second != 1)
                throw InvariantViolation("degeneracy s_" + std::to_string(j) + " of " + y.to_text() +
                                         " is not a basis monomial" + context);
            const auto& z = image[0].first;
            if (is_covering(z, masks_p, full_p))
                throw InvariantViolation("degenerate monomial " + z.to_text() + " covers level p" + context);
            terms.clear();
            for (int i = 0; i <= p; ++i) accumulate_image(x.face(p, i), z, parity, (i % 2 == 0) ? 1 : -1, terms);
            merge_terms(terms);
            for (const auto& [mono, c] : terms)
                if (is_covering(mono, masks_lower, full_lower))
                    throw InvariantViolation("boundary of degenerate " + z.to_text() + " has normalized component " +
                                             mono.to_text() + context);
        }
    }
}

SparseRationalMatrix hstack(std::size_t rows, const std::vector<SparseRationalMatrix>& blocks)
{
    SparseRationalMatrix out(rows, 0);
    for (const auto& b : blocks)
        for (std::size_t c = 0; c < b.cols(); ++c) out.append_column(b.column(c));
    return out;
}

SparseRationalMatrix induced_matrix(const PointedMap& f, int t, GenParity parity)
{
    return induced_map(f, t, parity).matrix;
}

void assemble_full_level(ComplexSlice& slice, const PointedSimplicialSet& x, const SliceOptions& options)
{
    const int t = slice.t;
    std::vector<QuotientBasis> quotients;
    for (int p = 0; p <= slice.p_bound; ++p) {
        auto& level = slice.levels[static_cast<std::size_t>(p)];
        if (level.full_dim > options.full_level_limit)
            throw std::invalid_argument("full-level mode refuses level " + std::to_string(p) + " of dimension " +
                                        std::to_string(level.full_dim));
        std::vector<SparseRationalMatrix> degenerate;
        for (int j = 0; p > 0 && j <= p - 1; ++j) degenerate.push_back(induced_matrix(x.degeneracy(p - 1, j), t, slice.parity));
        auto q = quotient_basis(level.full_dim, hstack(level.full_dim, degenerate));
        level.normalized_dim = q.complement.size();
        level.built = true;
        quotients.push_back(std::move(q));
    }
    if (!options.boundaries) return;
    std::optional<SparseRationalMatrix> previous;
    for (int p = 1; p <= slice.p_bound; ++p) {
        const auto ctx = where(slice.m, slice.n, slice.d, t, p);
        SparseRationalMatrix full(slice.levels[static_cast<std::size_t>(p - 1)].full_dim,
                                  slice.levels[static_cast<std::size_t>(p)].full_dim);
        for (int i = 0; i <= p; ++i) {
            auto face = induced_matrix(x.face(p, i), t, slice.parity);
            full = full + ((i % 2 == 0) ? Rational(1) : Rational(-1)) * face;
        }
        SparseRationalMatrix reduced;
        try {
            reduced = descend(full, quotients[static_cast<std::size_t>(p)], quotients[static_cast<std::size_t>(p - 1)]);
        } catch (const InvariantViolation& e) {
            throw InvariantViolation(std::string(e.what()) + ctx);
        }
        if (options.check_square_zero && previous && !(*previous * reduced).is_zero())
            throw InvariantViolation("boundary squares to a nonzero map" + ctx);
        slice.boundaries[static_cast<std::size_t>(p)].emplace(reduced);
        previous = std::move(reduced);
    }
    slice.square_zero_verified = options.check_square_zero;
    slice.well_defined_verified = true;
}

void assemble_covering(ComplexSlice& slice, const PointedSimplicialSet& x, const SliceOptions& options)
{
    const int t = slice.t;
    const int first_built = std::max(0, slice.p_min - 1);
    std::vector<OmegaMonomial> lower;
    std::optional<SparseIntMatrix> previous;
    for (int p = first_built; p <= slice.p_bound; ++p) {
        const auto ctx = where(slice.m, slice.n, slice.d, t, p);
        auto& level = slice.levels[static_cast<std::size_t>(p)];
        if (!options.boundaries) {
            const auto counted = normalized_basis_size(x, p, t);
            if (counted != level.normalized_dim)
                throw InvariantViolation("enumerated " + std::to_string(counted) + " normalized monomials, counted " +
                                         std::to_string(level.normalized_dim) + ctx);
            level.built = true;
            continue;
        }
        auto basis = normalized_basis(x, p, t);
        if (basis.size() != level.normalized_dim)
            throw InvariantViolation("enumerated " + std::to_string(basis.size()) + " normalized monomials, counted " +
                                     std::to_string(level.normalized_dim) + ctx);
        level.built = true;
        if (p > first_built) {
            if (options.check_well_defined) check_well_defined(x, p, slice.parity, lower, ctx);
            auto boundary = covering_boundary(x, p, slice.parity, basis, lower, ctx);
            if (options.check_square_zero && previous && !composition_vanishes(*previous, boundary))
                throw InvariantViolation("boundary squares to a nonzero map" + ctx);
            slice.boundaries[static_cast<std::size_t>(p)].emplace(boundary);
            previous = std::move(boundary);
        }
        lower = std::move(basis);
    }
    slice.square_zero_verified = options.boundaries && options.check_square_zero;
    slice.well_defined_verified = options.boundaries && options.check_well_defined;
}

}  // namespace

std::string_view to_string(AssemblyMode mode) { return mode == AssemblyMode::covering ? "covering" : "full_level"; }

// ---------------------------------------------------------------------------
// BoundaryMatrix

std::size_t BoundaryMatrix::rows() const
{
    return std::visit([](const auto& m) { return m.rows(); }, m_);
}

std::size_t BoundaryMatrix::cols() const
{
    return std::visit([](const auto& m) { return m.cols(); }, m_);
}

std::size_t BoundaryMatrix::nnz() const
{
    return std::visit([](const auto& m) { return m.nnz(); }, m_);
}

RankResult BoundaryMatrix::rank(const RankOptions& options) const
{
    return std::visit([&](const auto& m) { return linkshom::rank(m, options); }, m_);
}

SparseRationalMatrix BoundaryMatrix::to_rational() const
{
    if (const auto* m = std::get_if<SparseIntMatrix>(&m_)) return m->to_rational();
    return std::get<SparseRationalMatrix>(m_);
}

// ---------------------------------------------------------------------------
// Normalized bases

std::uint64_t normalized_dimension_count(int m, int n, int p, int t)
{
    if (m < 0 || n < 1 || p < 0 || t < 0) throw std::invalid_argument("normalized_dimension_count: bad arguments");
    __int128 total = 0;
    for (int j = 0; j <= p; ++j) {
        const auto points = static_cast<std::uint64_t>(m) * binomial(p - j, n);
        if (points > static_cast<std::uint64_t>(INT32_MAX)) throw std::overflow_error("level too large to count");
        const __int128 term = static_cast<__int128>(binomial(p, j)) * dimension(static_cast<int>(points), t);
        total += (j % 2 == 0) ? term : -term;
    }
    if (total < 0 || total > static_cast<__int128>(UINT64_MAX))
        throw InvariantViolation("inclusion-exclusion count out of range" + where(m, n, 0, t, p));
    return static_cast<std::uint64_t>(total);
}

std::vector<OmegaMonomial> normalized_basis(const PointedSimplicialSet& x, int p, int t)
{
    std::vector<OmegaMonomial> out;
    CoveringWalker walker(x, p, t);
    walker.run([&out](const OmegaMonomial& m) { out.push_back(m); });
    return out;
}

std::uint64_t normalized_basis_size(const PointedSimplicialSet& x, int p, int t)
{
    std::uint64_t count = 0;
    CoveringWalker walker(x, p, t);
    walker.run([&count](const OmegaMonomial&) { ++count; });
    return count;
}

// ---------------------------------------------------------------------------
// Slices

ComplexSlice assemble_slice(int m, int n, int d, int t, int p_bound, const SliceOptions& options)
{
    if (m < 0) throw std::invalid_argument("m must be >= 0");
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (d < 3) throw std::invalid_argument("d must be >= 3");
    if (t < 0) throw std::invalid_argument("t must be >= 0");
    if (p_bound < 0) throw std::invalid_argument("p_bound must be >= 0");
    if (options.p_min < 0) throw std::invalid_argument("p_min must be >= 0");

    ComplexSlice slice;
    slice.m = m;
    slice.n = n;
    slice.d = d;
    slice.t = t;
    slice.p_bound = p_bound;
    slice.p_min = std::min(options.p_min, p_bound);
    slice.parity = parity_of_dimension(d);
    slice.mode = options.mode;
    slice.boundaries.resize(static_cast<std::size_t>(p_bound) + 1);

    // A covering monomial touches at most 2t simplices with n jumps each, so
    // nothing survives above 2nt. Probe the two levels just past that bound.
    const int vanish_from = 2 * n * t + 1;
    const int probe_top = vanish_from + 1;
    const int model_top = std::max(p_bound + 1, probe_top);
    const auto x = wedge_model(m, n, model_top);

    for (int p = 0; p <= p_bound; ++p) {
        SliceLevel level;
        level.p = p;
        level.points = x.points(p);
        level.full_dim = dimension(level.points, t);
        level.normalized_dim = normalized_dimension_count(m, n, p, t);
        slice.levels.push_back(level);
        if (p >= vanish_from && level.normalized_dim != 0)
            throw InvariantViolation("normalized level above 2nt is nonzero" + where(m, n, d, t, p));
    }
    slice.dim_above = normalized_dimension_count(m, n, p_bound + 1, t);
    for (int p = vanish_from; p <= probe_top; ++p) {
        const auto counted = normalized_dimension_count(m, n, p, t);
        const auto enumerated = normalized_basis_size(x, p, t);
        if (counted != 0 || enumerated != 0)
            throw InvariantViolation("normalized vanishing fails: dim N = " + std::to_string(counted) +
                                     " counted, " + std::to_string(enumerated) + " enumerated" + where(m, n, d, t, p));
    }

    if (options.mode == AssemblyMode::full_level) {
        if (slice.p_min != 0) throw std::invalid_argument("full-level mode builds every level; p_min must be 0");
        assemble_full_level(slice, x, options);
        for (const auto& level : slice.levels)
            if (level.normalized_dim != normalized_dimension_count(m, n, level.p, t))
                throw InvariantViolation("full-level quotient dimension " + std::to_string(level.normalized_dim) +
                                         " disagrees with the covering count" + where(m, n, d, t, level.p));
    } else {
        assemble_covering(slice, x, options);
    }
    return slice;
}

std::vector<HomologyDim> homology_dims(const ComplexSlice& slice, const RankOptions& rank, RankCache* cache)
{
    // The top level needs the rank of the map coming from above, which is
    // only known when that level vanishes.
    const int top = slice.dim_above == 0 ? slice.p_bound : slice.p_bound - 1;
    std::map<int, std::uint64_t> ranks;
    auto rank_of = [&](int p) -> std::uint64_t {
        if (p <= 0 || p > slice.p_bound) return 0;
        if (auto it = ranks.find(p); it != ranks.end()) return it->second;
        const auto& level = slice.levels[static_cast<std::size_t>(p)];
        const auto& below = slice.levels[static_cast<std::size_t>(p - 1)];
        std::uint64_t r = 0;
        if (level.normalized_dim != 0 && below.normalized_dim != 0) {
            std::string kind = "boundary_rank/" + std::string(to_string(rank.policy));
            if (rank.policy == RankPolicy::multimodular)
                kind += "/seed=" + std::to_string(rank.seed) + "/primes=" + std::to_string(std::max<std::size_t>(rank.num_primes, 2));
            CacheKey key{slice.m, slice.n, slice.parity, slice.t, p, kind};
            std::optional<nlohmann::json> hit = cache ? cache->get(key) : std::nullopt;
            if (hit) {
                r = (*hit)["rank"].get<std::uint64_t>();
            } else {
                const auto& b = slice.boundaries[static_cast<std::size_t>(p)];
                if (!b) throw std::logic_error("boundary d_" + std::to_string(p) + " was not assembled");
                auto result = b->rank(rank);
                r = result.rank;
                if (cache) cache->put(key, nlohmann::json{{"rank", r}, {"primes", result.primes_used}});
            }
        }
        ranks[p] = r;
        return r;
    };
    std::vector<HomologyDim> out;
    for (int p = slice.p_min; p <= top; ++p) {
        const auto dim = static_cast<std::int64_t>(slice.levels[static_cast<std::size_t>(p)].normalized_dim);
        const auto h = dim - static_cast<std::int64_t>(rank_of(p)) - static_cast<std::int64_t>(rank_of(p + 1));
        if (h < 0)
            throw InvariantViolation("negative homology dimension " + std::to_string(h) +
                                     where(slice.m, slice.n, slice.d, slice.t, p));
        out.push_back({p, static_cast<std::uint64_t>(h)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Betti tables

namespace {

struct SlicePlan {
    int t = 0;
    int p_lo = 0;
    int p_hi = 0;
};

std::string caveat_for(int n)
{
    if (n == 1)
        return "E2 is computed for any d >= 4; reading it as the rational homology of long links modulo "
               "immersions requires d > 5";
    return "E2 is computed up to the user p-bound; reading it as the rational homology of the high-dimensional "
           "analogue requires d > 2n+3 = " + std::to_string(2 * n + 3);
}

}  // namespace

BettiTable betti_table(int m, int n, int d, int u_max, const BettiOptions& options)
{
    if (m < 0) throw std::invalid_argument("m must be >= 0");
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (u_max < 0) throw std::invalid_argument("u_max must be >= 0");
    if (n == 1 && d < 4) throw std::invalid_argument("n = 1 needs d >= 4 for finitely many contributing slices");
    if (n >= 2 && d < 3) throw std::invalid_argument("d must be >= 3");
    if (n >= 2 && !options.p_max) throw std::invalid_argument("n >= 2 requires an explicit p_max");
    if (options.p_max && *options.p_max < 0) throw std::invalid_argument("p_max must be >= 0");
    if (options.jobs < 1) throw std::invalid_argument("jobs must be >= 1");

    BettiTable table;
    table.m = m;
    table.n = n;
    table.d = d;
    table.p_bound_policy = n == 1 && !options.p_max ? "2t" : "user";
    table.rank_method = std::string(to_string(options.rank.policy));
    table.caveat = caveat_for(n);

    // Slice t feeds u = t(d-1) - p for p in its p-range.
    std::vector<SlicePlan> plans;
    const int t_max = n == 1 ? u_max / (d - 3) : (u_max + *options.p_max) / (d - 1);
    for (int t = 0; t <= t_max; ++t) {
        const int natural = 2 * n * t;
        int p_hi = std::min(t * (d - 1), n == 1 ? 2 * t : *options.p_max);
        if (n == 1 && options.p_max) p_hi = std::min(p_hi, *options.p_max);
        const int p_lo = std::max(0, t * (d - 1) - u_max);
        table.p_range.push_back(std::min(p_hi, natural));
        if (p_lo > p_hi) continue;
        plans.push_back({t, p_lo, p_hi});
    }

    std::vector<std::uint64_t> betti(static_cast<std::size_t>(u_max) + 1, 0);
    std::vector<bool> complete(betti.size(), n == 1);
    if (n == 1 && options.p_max)
        for (const auto& plan : plans)
            if (*options.p_max < 2 * plan.t)
                for (int p = *options.p_max + 1; p <= 2 * plan.t; ++p) {
                    const int u = plan.t * (d - 1) - p;
                    if (u >= 0 && u <= u_max) complete[static_cast<std::size_t>(u)] = false;
                }

    std::mutex merge;
    std::exception_ptr failure;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const auto i = next.fetch_add(1);
            if (i >= plans.size()) return;
            const auto& plan = plans[i];
            try {
                SliceOptions so;
                so.mode = options.mode;
                so.p_min = options.mode == AssemblyMode::full_level ? 0 : plan.p_lo;
                int p_bound = plan.p_hi;
                if (normalized_dimension_count(m, n, p_bound + 1, plan.t) != 0) ++p_bound;
                auto slice = assemble_slice(m, n, d, plan.t, p_bound, so);
                auto h = homology_dims(slice, options.rank, options.cache);
                std::lock_guard lock(merge);
                for (const auto& [p, dim] : h) {
                    if (p < plan.p_lo || p > plan.p_hi) continue;
                    const int u = plan.t * (d - 1) - p;
                    if (u >= 0 && u <= u_max) betti[static_cast<std::size_t>(u)] += dim;
                }
            } catch (...) {
                std::lock_guard lock(merge);
                if (!failure) failure = std::current_exception();
                next = plans.size();
            }
        }
    };
    if (options.jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int j = 0; j < options.jobs; ++j) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    for (int u = 0; u <= u_max; ++u)
        table.entries.push_back({u, betti[static_cast<std::size_t>(u)], static_cast<bool>(complete[static_cast<std::size_t>(u)])});
    return table;
}

std::string betti_to_json(const BettiTable& table)
{
    nlohmann::ordered_json doc;
    doc["m"] = table.m;
    doc["n"] = table.n;
    doc["d"] = table.d;
    auto entries = nlohmann::ordered_json::array();
    for (const auto& e : table.entries) {
        nlohmann::ordered_json row;
        row["u"] = e.u;
        row["betti"] = e.betti;
        row["complete"] = e.complete;
        entries.push_back(std::move(row));
    }
    doc["entries"] = std::move(entries);
    doc["p_bound_policy"] = table.p_bound_policy;
    doc["rank_method"] = table.rank_method;
    doc["p_range"] = table.p_range;
    doc["caveat"] = table.caveat;
    return doc.dump(2);
}

std::string betti_to_csv(const BettiTable& table)
{
    std::ostringstream os;
    os << "# m=" << table.m << " n=" << table.n << " d=" << table.d << " p_bound_policy=" << table.p_bound_policy
       << " rank_method=" << table.rank_method << "\n# " << table.caveat << "\nu,betti,complete\n";
    for (const auto& e : table.entries) os << e.u << ',' << e.betti << ',' << (e.complete ? "true" : "false") << '\n';
    return os.str();
}

std::string betti_to_markdown(const BettiTable& table)
{
    std::ostringstream os;
    os << "Betti numbers for m=" << table.m << ", n=" << table.n << ", d=" << table.d << " (p bound: "
       << table.p_bound_policy << ", ranks: " << table.rank_method << ")\n\n| u | betti | complete |\n|---|---|---|\n";
    for (const auto& e : table.entries) os << "| " << e.u << " | " << e.betti << " | " << (e.complete ? "yes" : "no") << " |\n";
    os << "\n" << table.caveat << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Euler check

bool EulerReport::all_pass() const
{
    return std::all_of(rows.begin(), rows.end(), [](const EulerRow& r) { return r.pass; });
}

std::string EulerReport::to_json() const
{
    nlohmann::ordered_json doc;
    doc["m"] = m;
    doc["d"] = d;
    doc["t_max"] = t_max;
    auto list = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json row;
        row["t"] = r.t;
        row["dims"] = r.dims;
        row["computed"] = r.computed;
        row["expected"] = r.expected.to_string();
        row["matched_sign"] = r.matched_sign;
        row["pass"] = r.pass;
        list.push_back(std::move(row));
    }
    doc["rows"] = std::move(list);
    doc["all_pass"] = all_pass();
    return doc.dump(2);
}

EulerReport euler_check(int m, int d, int t_max, RankCache* cache)
{
    if (m < 0) throw std::invalid_argument("m must be >= 0");
    if (d < 4) throw std::invalid_argument("d must be >= 4");
    if (t_max < 0) throw std::invalid_argument("t_max must be >= 0");
    EulerReport report;
    report.m = m;
    report.d = d;
    report.t_max = t_max;
    const auto series = euler_series_links(m, d, t_max * (d - 1));
    const auto x = wedge_model(m, 1, 2 * t_max + 2);
    for (int t = 0; t <= t_max; ++t) {
        EulerRow row;
        row.t = t;
        // Dimensions do not depend on d, so one enumeration serves every d.
        for (int p = 0; p <= 2 * t + 2; ++p) {
            CacheKey key{m, 1, GenParity::odd, t, p, "normalized_dim"};
            std::uint64_t dim = 0;
            std::optional<nlohmann::json> hit = cache ? cache->get(key) : std::nullopt;
            if (hit) {
                dim = hit->get<std::uint64_t>();
            } else {
                dim = normalized_basis_size(x, p, t);
                if (cache) cache->put(key, dim);
            }
            row.dims.push_back(dim);
            row.computed += (p % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(dim);
        }
        row.expected = series[t * (d - 1)];
        const bool probes_vanish = row.dims[static_cast<std::size_t>(2 * t + 1)] == 0 &&
                                   row.dims[static_cast<std::size_t>(2 * t + 2)] == 0;
        if (Rational(row.computed) == row.expected)
            row.matched_sign = 1;
        else if (Rational(-row.computed) == row.expected)
            row.matched_sign = -1;
        row.pass = row.matched_sign != 0 && probes_vanish;
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace linkshom

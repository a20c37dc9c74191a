#pragma once

// Pointed simplicial models of wedges of spheres: S^n_. = D^n_. / boundary,
// and the m-fold wedge of it. A non-base p-simplex is a strand c in 1..m
// together with the jump set J of a monotone surjection [p] -> [n], i.e. a
// strictly increasing n-subset of {1..p}. Everything else collapses to the
// basepoint.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "linkshom/gamma_maps.hpp"

namespace linkshom {

struct WedgeElement {
    int strand = 0;          // 0 for the basepoint
    std::vector<int> jumps;  // strictly increasing, values in 1..p

    [[nodiscard]] bool is_base() const { return strand == 0; }
    friend bool operator==(const WedgeElement&, const WedgeElement&) = default;
};

class PointedSimplicialSet {
public:
    static constexpr int max_level = 62;

    PointedSimplicialSet(int m, int n, int p_max);

    [[nodiscard]] int strands() const { return m_; }
    [[nodiscard]] int sphere_dimension() const { return n_; }
    [[nodiscard]] int p_max() const { return p_max_; }

    /// Number of simplices at level p, basepoint included.
    [[nodiscard]] std::size_t level_size(int p) const;
    /// Non-base simplices at level p; the point count of the Gamma-module input.
    [[nodiscard]] int points(int p) const { return static_cast<int>(level_size(p)) - 1; }

    /// Id 0 is the basepoint; ids 1.. run by strand, then jump set in
    /// lexicographic order.
    [[nodiscard]] const WedgeElement& element(int p, int id) const;
    [[nodiscard]] int id_of(int p, const WedgeElement& e) const;
    /// Bit q set iff q is in the jump set (bit 0 is never set).
    [[nodiscard]] std::uint64_t jump_mask(int p, int id) const;

    /// d_i: level p -> level p-1, 0 <= i <= p, p >= 1.
    [[nodiscard]] const PointedMap& face(int p, int i) const;
    /// s_j: level p -> level p+1, 0 <= j <= p < p_max.
    [[nodiscard]] const PointedMap& degeneracy(int p, int j) const;

    /// The whole model, with face and degeneracy tables, as JSON.
    [[nodiscard]] std::string to_json(int indent = 2) const;

private:
    void check_level(int p) const;

    int m_ = 0;
    int n_ = 1;
    int p_max_ = 0;
    std::vector<std::vector<WedgeElement>> levels_;
    std::vector<std::vector<std::uint64_t>> masks_;
    std::vector<std::vector<PointedMap>> faces_;        // faces_[p][i]
    std::vector<std::vector<PointedMap>> degeneracies_; // degeneracies_[p][j]
};

[[nodiscard]] PointedSimplicialSet wedge_model(int m, int n, int p_max);

/// Binomial coefficient; throws std::overflow_error beyond 64 bits.
[[nodiscard]] std::uint64_t binomial(int n, int k);

/// Jump-set face: returns false when the image is the basepoint.
bool face_jumps(const std::vector<int>& jumps, int p, int i, std::vector<int>& out);
/// Jump-set degeneracy; never hits the basepoint.
void degeneracy_jumps(const std::vector<int>& jumps, int j, std::vector<int>& out);

}  // namespace linkshom

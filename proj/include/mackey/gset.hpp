#pragma once

#include <vector>

#include "mackey/grp.hpp"

namespace mackey {

// Finite G-set with explicit action table and orbit data.
struct GSet {
    Group g;
    int n = 0;
    std::vector<std::vector<int>> act; // act[e][p]

    // orbit decomposition, in order of least base point
    std::vector<int> orbit_of;    // per point
    std::vector<int> base;        // per orbit, the least point
    std::vector<int> transporter; // per point, an e with e*base = point

    int apply(int e, int p) const { return act[e][p]; }
    int orbit_count() const { return (int)base.size(); }
    Subgroup stabilizer(int p) const;
    void compute_orbits();
    bool action_valid() const;
};

GSet make_gset(const Group& g, int n, const std::vector<std::vector<int>>& act);

// Left coset space G/L, points ordered by least coset element.
struct CosetSpace {
    GSet set;
    std::vector<int> coset_of; // per group element
    std::vector<int> rep;      // per point, the least element of the coset
};
CosetSpace coset_space(const Group& g, const std::vector<int>& subgroup_elems);

GSet product_gset(const GSet& x, const GSet& y); // point = px * y.n + py
GSet point_gset(const Group& g);

// Subset of points closed under the action, reindexed.
GSet sub_gset(const GSet& x, const std::vector<int>& points, std::vector<int>* old_of_new = nullptr);

// Same points, action through f (for f : H -> G and an existing G-set).
GSet restrict_gset(const GSet& x, const GrpHom& f);

} // namespace mackey

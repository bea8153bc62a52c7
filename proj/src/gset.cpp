#include "mackey/gset.hpp"

#include <algorithm>

namespace mackey {

Subgroup GSet::stabilizer(int p) const {
    std::vector<int> elems;
    for (int e = 0; e < g->order(); ++e)
        if (act[e][p] == p) elems.push_back(e);
    return Subgroup{g, elems};
}

void GSet::compute_orbits() {
    orbit_of.assign(n, -1);
    transporter.assign(n, 0);
    base.clear();
    for (int p = 0; p < n; ++p) {
        if (orbit_of[p] >= 0) continue;
        int id = (int)base.size();
        base.push_back(p);
        orbit_of[p] = id;
        transporter[p] = 0;
        std::vector<int> work{p};
        for (std::size_t i = 0; i < work.size(); ++i)
            for (int e = 0; e < g->order(); ++e) {
                int q = act[e][work[i]];
                if (orbit_of[q] < 0) {
                    orbit_of[q] = id;
                    transporter[q] = g->mul(e, transporter[work[i]]);
                    work.push_back(q);
                }
            }
    }
}

bool GSet::action_valid() const {
    for (int p = 0; p < n; ++p)
        if (act[0][p] != p) return false;
    for (int a = 0; a < g->order(); ++a)
        for (int b = 0; b < g->order(); ++b) {
            int ab = g->mul(a, b);
            for (int p = 0; p < n; ++p)
                if (act[ab][p] != act[a][act[b][p]]) return false;
        }
    return true;
}

GSet make_gset(const Group& g, int n, const std::vector<std::vector<int>>& act) {
    GSet s;
    s.g = g;
    s.n = n;
    s.act = act;
    s.compute_orbits();
    return s;
}

CosetSpace coset_space(const Group& g, const std::vector<int>& subgroup_elems) {
    CosetSpace cs;
    cs.coset_of.assign(g->order(), -1);
    for (int e = 0; e < g->order(); ++e) {
        if (cs.coset_of[e] >= 0) continue;
        int id = (int)cs.rep.size();
        cs.rep.push_back(e);
        for (int x : subgroup_elems) cs.coset_of[g->mul(e, x)] = id;
    }
    const int n = (int)cs.rep.size();
    std::vector<std::vector<int>> act(g->order(), std::vector<int>(n));
    for (int e = 0; e < g->order(); ++e)
        for (int p = 0; p < n; ++p) act[e][p] = cs.coset_of[g->mul(e, cs.rep[p])];
    cs.set = make_gset(g, n, act);
    return cs;
}

GSet product_gset(const GSet& x, const GSet& y) {
    require(x.g == y.g, errc::parent_mismatch, "product of sets over different groups");
    const int n = x.n * y.n;
    std::vector<std::vector<int>> act(x.g->order(), std::vector<int>(n));
    for (int e = 0; e < x.g->order(); ++e)
        for (int p = 0; p < x.n; ++p)
            for (int q = 0; q < y.n; ++q) act[e][p * y.n + q] = x.act[e][p] * y.n + y.act[e][q];
    return make_gset(x.g, n, act);
}

GSet point_gset(const Group& g) {
    return make_gset(g, 1, std::vector<std::vector<int>>(g->order(), std::vector<int>(1, 0)));
}

GSet sub_gset(const GSet& x, const std::vector<int>& points, std::vector<int>* old_of_new) {
    std::vector<int> new_of_old(x.n, -1);
    for (std::size_t i = 0; i < points.size(); ++i) new_of_old[points[i]] = (int)i;
    std::vector<std::vector<int>> act(x.g->order(), std::vector<int>(points.size()));
    for (int e = 0; e < x.g->order(); ++e)
        for (std::size_t i = 0; i < points.size(); ++i) {
            int q = new_of_old[x.act[e][points[i]]];
            require(q >= 0, errc::internal, "sub_gset: point set not closed under the action");
            act[e][i] = q;
        }
    if (old_of_new) *old_of_new = points;
    return make_gset(x.g, (int)points.size(), act);
}

GSet restrict_gset(const GSet& x, const GrpHom& f) {
    require(f.dst == x.g, errc::parent_mismatch, "restrict_gset");
    std::vector<std::vector<int>> act(f.src->order());
    for (int e = 0; e < f.src->order(); ++e) act[e] = x.act[f.img[e]];
    return make_gset(f.src, x.n, act);
}

} // namespace mackey

#include "mackey/burnside.hpp"

#include <algorithm>

namespace mackey {

void BurnsideHom::add(const SpanBasisElt& s, long long n) {
    if (n == 0) return;
    auto [it, inserted] = c.try_emplace(s, 0);
    it->second += n;
    if (it->second == 0) c.erase(it);
}

BurnsideHom& BurnsideHom::operator+=(const BurnsideHom& o) {
    for (const auto& [s, n] : o.c) add(s, n);
    return *this;
}

BurnsideHom BurnsideHom::scaled(long long n) const {
    BurnsideHom r{src_cls, dst_cls, {}};
    if (n == 0) return r;
    for (const auto& [s, m] : c) r.c[s] = m * n;
    return r;
}

bool BurnsideHom::is_zero() const { return c.empty(); }

bool BurnsideHom::operator==(const BurnsideHom& o) const {
    return src_cls == o.src_cls && dst_cls == o.dst_cls && c == o.c;
}

bool SumHom::operator==(const SumHom& o) const { return src == o.src && dst == o.dst && e == o.e; }

BurnsideCat::BurnsideCat(Group g) : g_(std::move(g)) {
    classes_ = subgroup_classes(g_);
    subgroups_ = all_subgroups(g_);
    for (std::size_t i = 0; i < classes_.size(); ++i)
        for (const auto& m : classes_[i].members) cls_of_[m.elems] = (int)i;
    for (const auto& cls : classes_) real_.push_back(coset_space(g_, cls.rep.elems));
}

Cat BurnsideCat::make(Group g) { return std::shared_ptr<const BurnsideCat>(new BurnsideCat(std::move(g))); }

int BurnsideCat::class_of(const std::vector<int>& subgroup_elems) const {
    auto it = cls_of_.find(subgroup_elems);
    require(it != cls_of_.end(), errc::internal, "unknown subgroup");
    return it->second;
}

std::pair<int, int> BurnsideCat::mediating(const Subgroup& s) const {
    int c = class_of(s.elems);
    for (int u = 0; u < g_->order(); ++u)
        if (conjugate_subgroup(classes_[c].rep, u).elems == s.elems) return {c, u};
    fail(errc::internal, "no mediating conjugator");
}

SpanBasisElt BurnsideCat::canonical(int h_cls, int k_cls, const std::vector<int>& mid, int lelem, int relem) const {
    const CosetSpace& rh = real_[h_cls];
    const CosetSpace& rk = real_[k_cls];
    SpanBasisElt best;
    bool have = false;
    std::vector<int> cm(mid.size());
    for (int t = 0; t < g_->order(); ++t) {
        for (std::size_t i = 0; i < mid.size(); ++i) cm[i] = g_->conj(t, mid[i]);
        std::sort(cm.begin(), cm.end());
        int l = rh.rep[rh.coset_of[g_->mul(t, lelem)]];
        int r = rk.rep[rk.coset_of[g_->mul(t, relem)]];
        SpanBasisElt cand{h_cls, k_cls, cm, l, r};
        if (!have || cand < best) {
            best = std::move(cand);
            have = true;
        }
    }
    return best;
}

SpanBasisElt BurnsideCat::identity_span(int c) const {
    return canonical(c, c, classes_[c].rep.elems, 0, 0);
}

const std::vector<SpanBasisElt>& BurnsideCat::hom_basis(int h_cls, int k_cls) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = bases_.find({h_cls, k_cls});
        if (it != bases_.end()) return it->second;
    }
    // orbits of G on G/H x G/K; per orbit, the subgroups of the stabilizer
    // up to stabilizer conjugacy give the distinct middles
    GSet prod = product_gset(real_[h_cls].set, real_[k_cls].set);
    std::vector<SpanBasisElt> basis;
    for (int o = 0; o < prod.orbit_count(); ++o) {
        int bp = prod.base[o];
        Subgroup stab = prod.stabilizer(bp);
        int lelem = real_[h_cls].rep[bp / real_[k_cls].set.n];
        int relem = real_[k_cls].rep[bp % real_[k_cls].set.n];
        for (const auto& t : subgroups_) {
            if (!subgroup_subset(t, stab)) continue;
            bool least = true;
            for (int s : stab.elems)
                if (conjugate_subgroup(t, s).elems < t.elems) {
                    least = false;
                    break;
                }
            if (!least) continue;
            basis.push_back(canonical(h_cls, k_cls, t.elems, lelem, relem));
        }
    }
    std::sort(basis.begin(), basis.end());
    for (std::size_t i = 1; i < basis.size(); ++i)
        require(!(basis[i] == basis[i - 1]), errc::internal, "duplicate span basis element");
    std::lock_guard<std::mutex> lock(mu_);
    return bases_.emplace(std::make_pair(h_cls, k_cls), std::move(basis)).first->second;
}

int BurnsideCat::basis_index(const SpanBasisElt& s) const {
    const auto& basis = hom_basis(s.h_cls, s.k_cls);
    auto it = std::lower_bound(basis.begin(), basis.end(), s);
    require(it != basis.end() && *it == s, errc::internal, "span not in basis");
    return (int)(it - basis.begin());
}

SpanBasisElt BurnsideCat::transpose(const SpanBasisElt& s) const {
    return canonical(s.k_cls, s.h_cls, s.mid, s.rrep, s.lrep);
}

BurnsideHom BurnsideCat::transpose(const BurnsideHom& h) const {
    BurnsideHom r{h.dst_cls, h.src_cls, {}};
    for (const auto& [s, n] : h.c) r.add(transpose(s), n);
    return r;
}

SumHom BurnsideCat::transpose(const SumHom& h) const {
    SumHom r{h.dst, h.src, {}};
    r.e.resize((std::size_t)h.dst.size() * h.src.size());
    for (int i = 0; i < h.src.size(); ++i)
        for (int j = 0; j < h.dst.size(); ++j) r.at(j, i) = transpose(h.at(i, j));
    return r;
}

const BurnsideHom& BurnsideCat::compose_basis(const SpanBasisElt& outer, const SpanBasisElt& inner) const {
    require(inner.k_cls == outer.h_cls, errc::compose_error, "span composition endpoint mismatch");
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = comp_.find({outer, inner});
        if (it != comp_.end()) return it->second;
    }
    // pull the two middles back over the shared leg and decompose
    CosetSpace m1 = coset_space(g_, inner.mid);
    CosetSpace m2 = coset_space(g_, outer.mid);
    const CosetSpace& rk = real_[inner.k_cls];
    const CosetSpace& rh = real_[inner.h_cls];
    const CosetSpace& rj = real_[outer.k_cls];

    GSet prod = product_gset(m1.set, m2.set);
    std::vector<int> pts;
    for (int p = 0; p < m1.set.n; ++p) {
        int right1 = rk.coset_of[g_->mul(m1.rep[p], inner.rrep)];
        for (int q = 0; q < m2.set.n; ++q) {
            int left2 = rk.coset_of[g_->mul(m2.rep[q], outer.lrep)];
            if (right1 == left2) pts.push_back(p * m2.set.n + q);
        }
    }
    std::vector<int> old_of_new;
    GSet w = sub_gset(prod, pts, &old_of_new);
    BurnsideHom out{inner.h_cls, outer.k_cls, {}};
    for (int o = 0; o < w.orbit_count(); ++o) {
        int bp = old_of_new[w.base[o]];
        int p = bp / m2.set.n, q = bp % m2.set.n;
        Subgroup stab = w.stabilizer(w.base[o]);
        int lelem = rh.rep[rh.coset_of[g_->mul(m1.rep[p], inner.lrep)]];
        int relem = rj.rep[rj.coset_of[g_->mul(m2.rep[q], outer.rrep)]];
        out.add(canonical(inner.h_cls, outer.k_cls, stab.elems, lelem, relem), 1);
    }
    std::lock_guard<std::mutex> lock(mu_);
    return comp_.emplace(std::make_pair(outer, inner), std::move(out)).first->second;
}

BurnsideHom BurnsideCat::compose(const BurnsideHom& outer, const BurnsideHom& inner) const {
    require(inner.dst_cls == outer.src_cls, errc::compose_error, "hom composition endpoint mismatch");
    BurnsideHom r{inner.src_cls, outer.dst_cls, {}};
    for (const auto& [s2, n2] : outer.c)
        for (const auto& [s1, n1] : inner.c) r += compose_basis(s2, s1).scaled(n1 * n2);
    return r;
}

SumHom BurnsideCat::compose(const SumHom& outer, const SumHom& inner) const {
    require(inner.dst == outer.src, errc::compose_error, "sum hom composition endpoint mismatch");
    SumHom r = zero_sum_hom(inner.src, outer.dst);
    for (int i = 0; i < inner.src.size(); ++i)
        for (int j = 0; j < outer.dst.size(); ++j)
            for (int k = 0; k < inner.dst.size(); ++k) r.at(i, j) += compose(outer.at(k, j), inner.at(i, k));
    return r;
}

BurnsideHom BurnsideCat::zero_hom(int h_cls, int k_cls) const { return BurnsideHom{h_cls, k_cls, {}}; }

BurnsideHom BurnsideCat::basis_hom(const SpanBasisElt& s) const {
    BurnsideHom r{s.h_cls, s.k_cls, {}};
    r.add(s, 1);
    return r;
}

SumHom BurnsideCat::identity_sum_hom(const ObjSum& o) const {
    SumHom r = zero_sum_hom(o, o);
    for (int i = 0; i < o.size(); ++i) r.at(i, i) = basis_hom(identity_span(o.comps[i]));
    return r;
}

SumHom BurnsideCat::zero_sum_hom(const ObjSum& src, const ObjSum& dst) const {
    SumHom r{src, dst, {}};
    r.e.resize((std::size_t)src.size() * dst.size());
    for (int i = 0; i < src.size(); ++i)
        for (int j = 0; j < dst.size(); ++j) r.at(i, j) = zero_hom(src.comps[i], dst.comps[j]);
    return r;
}

SpanBasisElt BurnsideCat::transfer_span(int a_cls, int b_cls, int pt) const {
    return canonical(a_cls, b_cls, classes_[a_cls].rep.elems, 0, real_[b_cls].rep[pt]);
}

SpanBasisElt BurnsideCat::restriction_span(int a_cls, int b_cls, int pt) const {
    return canonical(b_cls, a_cls, classes_[a_cls].rep.elems, real_[b_cls].rep[pt], 0);
}

SumHom BurnsideCat::expand_span(const GSet& w, const std::vector<SumPoint>& lleg, const ObjSum& a,
                                const std::vector<SumPoint>& rleg, const ObjSum& b) const {
    SumHom out = zero_sum_hom(a, b);
    for (int o = 0; o < w.orbit_count(); ++o) {
        int bp = w.base[o];
        Subgroup stab = w.stabilizer(bp);
        const SumPoint& l = lleg[bp];
        const SumPoint& r = rleg[bp];
        int lelem = real_[a.comps[l.comp]].rep[l.pt];
        int relem = real_[b.comps[r.comp]].rep[r.pt];
        out.at(l.comp, r.comp).add(canonical(a.comps[l.comp], b.comps[r.comp], stab.elems, lelem, relem), 1);
    }
    return out;
}

void BurnsideCat::precompute_all() const {
    for (int h = 0; h < n_classes(); ++h)
        for (int k = 0; k < n_classes(); ++k) hom_basis(h, k);
    for (int h = 0; h < n_classes(); ++h)
        for (int k = 0; k < n_classes(); ++k)
            for (int j = 0; j < n_classes(); ++j)
                for (const auto& s1 : hom_basis(h, k))
                    for (const auto& s2 : hom_basis(k, j)) compose_basis(s2, s1);
}

std::vector<VirtualOrbit> oracle_realize(const BurnsideCat& cat, const SpanBasisElt& s) {
    const Group& g = cat.group();
    CosetSpace m = coset_space(g, s.mid);
    const CosetSpace& rh = cat.realization(s.h_cls);
    const CosetSpace& rk = cat.realization(s.k_cls);
    std::vector<VirtualOrbit> out;
    for (int o = 0; o < m.set.orbit_count(); ++o) {
        int bp = m.set.base[o];
        VirtualOrbit v;
        v.stab = m.set.stabilizer(bp).elems;
        v.lpt = rh.coset_of[g->mul(m.rep[bp], s.lrep)];
        v.rpt = rk.coset_of[g->mul(m.rep[bp], s.rrep)];
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<VirtualOrbit> oracle_compose(const BurnsideCat& cat, const SpanBasisElt& outer,
                                         const SpanBasisElt& inner) {
    const Group& g = cat.group();
    CosetSpace m1 = coset_space(g, inner.mid);
    CosetSpace m2 = coset_space(g, outer.mid);
    const CosetSpace& rk = cat.realization(inner.k_cls);
    const CosetSpace& rh = cat.realization(inner.h_cls);
    const CosetSpace& rj = cat.realization(outer.k_cls);
    GSet prod = product_gset(m1.set, m2.set);
    std::vector<int> pts;
    for (int p = 0; p < m1.set.n; ++p)
        for (int q = 0; q < m2.set.n; ++q)
            if (rk.coset_of[g->mul(m1.rep[p], inner.rrep)] == rk.coset_of[g->mul(m2.rep[q], outer.lrep)])
                pts.push_back(p * m2.set.n + q);
    std::vector<int> old_of_new;
    GSet w = sub_gset(prod, pts, &old_of_new);
    std::vector<VirtualOrbit> out;
    for (int o = 0; o < w.orbit_count(); ++o) {
        int bp = old_of_new[w.base[o]];
        VirtualOrbit v;
        v.stab = w.stabilizer(w.base[o]).elems;
        v.lpt = rh.coset_of[g->mul(m1.rep[bp / m2.set.n], inner.lrep)];
        v.rpt = rj.coset_of[g->mul(m2.rep[bp % m2.set.n], outer.rrep)];
        out.push_back(std::move(v));
    }
    return out;
}

bool oracle_same(const BurnsideCat& cat, int h_cls, int j_cls, std::vector<VirtualOrbit> a,
                 std::vector<VirtualOrbit> b) {
    (void)h_cls;
    (void)j_cls;
    if (a.size() != b.size()) return false;
    const Group& g = cat.group();
    const CosetSpace& rh = cat.realization(h_cls);
    const CosetSpace& rj = cat.realization(j_cls);
    // greedy matching; orbits over the product are isomorphic iff some group
    // element carries base legs and stabilizer onto each other
    std::vector<bool> used(b.size(), false);
    for (const auto& va : a) {
        bool matched = false;
        for (std::size_t i = 0; i < b.size() && !matched; ++i) {
            if (used[i]) continue;
            const auto& vb = b[i];
            if (va.stab.size() != vb.stab.size()) continue;
            for (int t = 0; t < g->order() && !matched; ++t) {
                if (rh.coset_of[g->mul(t, rh.rep[va.lpt])] != rh.coset_of[rh.rep[vb.lpt]]) continue;
                if (rj.coset_of[g->mul(t, rj.rep[va.rpt])] != rj.coset_of[rj.rep[vb.rpt]]) continue;
                std::vector<int> conj;
                for (int x : va.stab) conj.push_back(g->conj(t, x));
                std::sort(conj.begin(), conj.end());
                if (conj == vb.stab) {
                    used[i] = true;
                    matched = true;
                }
            }
        }
        if (!matched) return false;
    }
    return true;
}

} // namespace mackey

#include "mackey/abelian.hpp"

#include <algorithm>
#include <sstream>

namespace mackey {

AbGrp::AbGrp(int n_gens, ZMat relations) : n_(n_gens) {
    require(relations.rows() == n_gens, errc::shape_mismatch, "relation matrix must have one row per generator");
    payload_ = std::make_shared<Payload>();
    payload_->rels = std::move(relations);
}

AbGrp AbGrp::cyclic(long long n) {
    ZMat r(1, 1);
    r.at(0, 0) = n;
    return AbGrp(1, r);
}

const Snf& AbGrp::rels_snf() const {
    std::call_once(payload_->once,
                   [this] { payload_->snf_cache = std::make_unique<Snf>(snf(payload_->rels, SnfFlags::decompose())); });
    return *payload_->snf_cache;
}

bool AbGrp::is_trivial() const {
    const Snf& s = rels_snf();
    if (s.rank < n_) return false;
    for (int i = 0; i < n_; ++i)
        if (s.diag[i] != 1 && s.diag[i] != -1) return false;
    return true;
}

int AbGrp::free_rank() const { return n_ - rels_snf().rank; }

std::vector<Int> AbGrp::torsion() const { return rels_snf().nontrivial(); }

std::string AbGrp::str() const {
    std::ostringstream os;
    int r = free_rank();
    auto t = torsion();
    if (r == 0 && t.empty()) return "0";
    bool first = true;
    if (r > 0) {
        os << (r == 1 ? "Z" : "Z^" + std::to_string(r));
        first = false;
    }
    for (const auto& d : t) {
        if (!first) os << " + ";
        os << "Z/" << d;
        first = false;
    }
    return os.str();
}

bool AbGrp::rel_member(const ZMat& v) const { return solvable(rels(), rels_snf(), v); }

AbHom::AbHom(AbGrp src, AbGrp dst, ZMat m) : src_(std::move(src)), dst_(std::move(dst)), m_(std::move(m)) {
    require(m_.rows() == dst_.gens() && m_.cols() == src_.gens(), errc::shape_mismatch, "hom matrix shape");
}

AbHom AbHom::identity(const AbGrp& a) { return AbHom(a, a, ZMat::identity(a.gens())); }

AbHom AbHom::zero(const AbGrp& src, const AbGrp& dst) { return AbHom(src, dst, ZMat(dst.gens(), src.gens())); }

bool AbHom::is_valid() const {
    if (src_.rels().cols() == 0) return true;
    ZMat image_of_rels = m_ * src_.rels();
    return solvable(dst_.rels(), dst_.rels_snf(), image_of_rels);
}

AbHom AbHom::compose(const AbHom& inner) const {
    require(inner.dst_.gens() == src_.gens(), errc::shape_mismatch, "hom composition");
    return AbHom(inner.src_, dst_, m_ * inner.m_);
}

AbHom AbHom::operator+(const AbHom& o) const { return AbHom(src_, dst_, m_ + o.m_); }
AbHom AbHom::operator-(const AbHom& o) const { return AbHom(src_, dst_, m_ - o.m_); }

bool AbHom::equals(const AbHom& o) const {
    require(src_.gens() == o.src_.gens() && dst_.gens() == o.dst_.gens(), errc::shape_mismatch, "hom comparison");
    ZMat diff = m_ - o.m_;
    if (diff.is_zero()) return true;
    return solvable(dst_.rels(), dst_.rels_snf(), diff);
}

bool AbHom::is_zero_map() const { return equals(zero(src_, dst_)); }

AbGrp kernel_of(const AbHom& h, AbHom* incl) {
    // L = { x : h(x) in dst relation lattice }, a lattice between the source
    // relations and Z^n. The kernel is L modulo the source relations.
    ZMat combined = h.mat().hcat(h.dst().rels());
    ZMat full_kernel = kernel_basis(combined);
    ZMat gens(h.src().gens(), full_kernel.cols());
    for (int i = 0; i < gens.rows(); ++i)
        for (int j = 0; j < gens.cols(); ++j) gens.at(i, j) = full_kernel.at(i, j);
    ZMat basis = lattice_basis(gens);

    ZMat rel_combined = basis.hcat(h.src().rels());
    ZMat rel_kernel = kernel_basis(rel_combined);
    ZMat zpart(basis.cols(), rel_kernel.cols());
    for (int i = 0; i < zpart.rows(); ++i)
        for (int j = 0; j < zpart.cols(); ++j) zpart.at(i, j) = rel_kernel.at(i, j);
    AbGrp ker(basis.cols(), lattice_basis(zpart));
    if (incl) *incl = AbHom(ker, h.src(), basis);
    return ker;
}

AbGrp cokernel_of(const AbHom& h, AbHom* proj) {
    AbGrp coker(h.dst().gens(), h.dst().rels().hcat(h.mat()));
    if (proj) *proj = AbHom(h.dst(), coker, ZMat::identity(h.dst().gens()));
    return coker;
}

HomInvariants hom_invariants(const AbHom& h) {
    HomInvariants out;
    out.kernel = kernel_of(h, &out.ker_incl);
    out.cokernel = cokernel_of(h, &out.coker_proj);
    // image = source / { x : h(x) dies in the target }
    ZMat combined = h.mat().hcat(h.dst().rels());
    ZMat full_kernel = kernel_basis(combined);
    ZMat gens(h.src().gens(), full_kernel.cols());
    for (int i = 0; i < gens.rows(); ++i)
        for (int j = 0; j < gens.cols(); ++j) gens.at(i, j) = full_kernel.at(i, j);
    out.image = AbGrp(h.src().gens(), lattice_basis(gens));
    out.is_mono = out.kernel.is_trivial();
    out.is_epi = out.cokernel.is_trivial();
    out.is_iso = out.is_mono && out.is_epi;
    return out;
}

bool is_iso(const AbHom& h) {
    AbHom ker_incl;
    if (!kernel_of(h, &ker_incl).is_trivial()) return false;
    return cokernel_of(h).is_trivial();
}

AbHom invert(const AbHom& h) {
    // solve h(x_i) = e_i modulo target relations, column by column
    ZMat combined = h.mat().hcat(h.dst().rels());
    auto sol = solve(combined, ZMat::identity(h.dst().gens()));
    require(sol.has_value(), errc::internal, "invert: hom is not epi");
    ZMat inv(h.src().gens(), h.dst().gens());
    for (int i = 0; i < inv.rows(); ++i)
        for (int j = 0; j < inv.cols(); ++j) inv.at(i, j) = sol->at(i, j);
    AbHom out(h.dst(), h.src(), inv);
    require(out.compose(h).equals(AbHom::identity(h.src())), errc::internal, "invert: hom is not mono");
    return out;
}

AbHom factor_through_mono(const AbHom& incl, const AbHom& g) {
    require(incl.dst().gens() == g.dst().gens(), errc::shape_mismatch, "factor_through_mono");
    ZMat combined = incl.mat().hcat(incl.dst().rels());
    auto sol = solve(combined, g.mat());
    require(sol.has_value(), errc::internal, "factor_through_mono: no factorization");
    ZMat m(incl.src().gens(), g.mat().cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m.at(i, j) = sol->at(i, j);
    return AbHom(g.src(), incl.src(), m);
}

SmithDecomp smith_decompose(const AbGrp& a) {
    const Snf& s = a.rels_snf();
    const int n = a.gens();
    // coordinates y = u*x present the group as a direct sum of cyclics;
    // coordinates with d_i = 1 are dropped
    std::vector<int> keep;
    std::vector<Int> ds;
    for (int i = 0; i < n; ++i) {
        Int d = i < (int)s.diag.size() ? s.diag[i] : Int(0);
        if (d < 0) d = -d;
        if (d == 1) continue;
        keep.push_back(i);
        ds.push_back(d);
    }
    const int k = (int)keep.size();
    ZMat rels(k, 0);
    {
        std::vector<int> tors;
        for (int i = 0; i < k; ++i)
            if (ds[i] != 0) tors.push_back(i);
        rels = ZMat(k, (int)tors.size());
        for (int c = 0; c < (int)tors.size(); ++c) rels.at(tors[c], c) = ds[tors[c]];
    }
    AbGrp canon(k, rels);
    ZMat to(k, n), from(n, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < n; ++j) to.at(i, j) = s.u.at(keep[i], j);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < n; ++i) from.at(i, j) = s.uinv.at(i, keep[j]);
    return SmithDecomp{canon, AbHom(a, canon, to), AbHom(canon, a, from)};
}

bool abgrp_iso(const AbGrp& a, const AbGrp& b) {
    return a.free_rank() == b.free_rank() && a.torsion() == b.torsion();
}

DirectSum direct_sum(const std::vector<AbGrp>& parts) {
    DirectSum out;
    int total_gens = 0;
    ZMat rels(0, 0);
    for (const auto& p : parts) {
        out.offset.push_back(total_gens);
        total_gens += p.gens();
        rels = rels.block_diag(p.rels());
    }
    out.total = AbGrp(total_gens, rels);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        ZMat inc(total_gens, parts[i].gens());
        ZMat prj(parts[i].gens(), total_gens);
        for (int g = 0; g < parts[i].gens(); ++g) {
            inc.at(out.offset[i] + g, g) = 1;
            prj.at(g, out.offset[i] + g) = 1;
        }
        out.incl.emplace_back(parts[i], out.total, inc);
        out.proj.emplace_back(out.total, parts[i], prj);
    }
    return out;
}

void AbDiagram::validate() const {
    for (const auto& e : edges) {
        require(e.src >= 0 && e.src < (int)obj.size() && e.dst >= 0 && e.dst < (int)obj.size(), errc::diagram_error,
                "diagram edge endpoints");
        require(e.h.src().gens() == obj[e.src].gens() && e.h.dst().gens() == obj[e.dst].gens(), errc::diagram_error,
                "diagram edge hom does not match endpoints");
    }
}

ColimitData finite_colimit(const AbDiagram& d) {
    d.validate();
    require(!d.obj.empty(), errc::diagram_error, "colimit of empty diagram");
    DirectSum sum = direct_sum(d.obj);
    // relations: all object relations plus, per edge e and generator g of the
    // source, incl_dst(h(g)) - incl_src(g)
    int extra = 0;
    for (const auto& e : d.edges) extra += d.obj[e.src].gens();
    ZMat rels(sum.total.gens(), sum.total.rels().cols() + extra);
    for (int i = 0; i < sum.total.gens(); ++i)
        for (int j = 0; j < sum.total.rels().cols(); ++j) rels.at(i, j) = sum.total.rels().at(i, j);
    int c = sum.total.rels().cols();
    for (const auto& e : d.edges) {
        for (int g = 0; g < d.obj[e.src].gens(); ++g) {
            for (int r = 0; r < d.obj[e.dst].gens(); ++r) rels.at(sum.offset[e.dst] + r, c) += e.h.mat().at(r, g);
            rels.at(sum.offset[e.src] + g, c) -= 1;
            ++c;
        }
    }
    ColimitData out;
    out.value = AbGrp(sum.total.gens(), rels);
    for (std::size_t i = 0; i < d.obj.size(); ++i)
        out.cocone.push_back(AbHom(d.obj[i], out.value, sum.incl[i].mat()));
    return out;
}

AbHom colimit_induced(const AbDiagram& d, const ColimitData& c, const AbGrp& t, const std::vector<AbHom>& competing) {
    require(competing.size() == d.obj.size(), errc::diagram_error, "competing cocone size");
    ZMat m(t.gens(), c.value.gens());
    int off = 0;
    for (std::size_t i = 0; i < d.obj.size(); ++i) {
        for (int g = 0; g < d.obj[i].gens(); ++g) {
            for (int r = 0; r < t.gens(); ++r) m.at(r, off + g) = competing[i].mat().at(r, g);
        }
        off += d.obj[i].gens();
    }
    return AbHom(c.value, t, m);
}

LimitData finite_limit(const AbDiagram& d) {
    d.validate();
    require(!d.obj.empty(), errc::diagram_error, "limit of empty diagram");
    DirectSum sum = direct_sum(d.obj);
    std::vector<AbGrp> targets;
    for (const auto& e : d.edges) targets.push_back(d.obj[e.dst]);
    DirectSum tsum = direct_sum(targets);
    ZMat diff(tsum.total.gens(), sum.total.gens());
    for (std::size_t k = 0; k < d.edges.size(); ++k) {
        const auto& e = d.edges[k];
        for (int r = 0; r < d.obj[e.dst].gens(); ++r) {
            for (int g = 0; g < d.obj[e.src].gens(); ++g)
                diff.at(tsum.offset[k] + r, sum.offset[e.src] + g) += e.h.mat().at(r, g);
            diff.at(tsum.offset[k] + r, sum.offset[e.dst] + r) -= 1;
        }
    }
    AbHom dmap(sum.total, tsum.total, diff);
    LimitData out;
    out.value = kernel_of(dmap, &out.embed);
    for (std::size_t i = 0; i < d.obj.size(); ++i) out.cone.push_back(sum.proj[i].compose(out.embed));
    return out;
}

AbHom limit_induced(const AbDiagram& d, const LimitData& l, const AbGrp& t, const std::vector<AbHom>& competing) {
    require(competing.size() == d.obj.size(), errc::diagram_error, "competing cone size");
    int total = l.embed.dst().gens();
    ZMat m(total, t.gens());
    int off = 0;
    for (std::size_t i = 0; i < d.obj.size(); ++i) {
        for (int r = 0; r < d.obj[i].gens(); ++r)
            for (int g = 0; g < t.gens(); ++g) m.at(off + r, g) = competing[i].mat().at(r, g);
        off += d.obj[i].gens();
    }
    return factor_through_mono(l.embed, AbHom(t, l.embed.dst(), m));
}

} // namespace mackey

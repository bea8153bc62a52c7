#include "mackey/mackeyf.hpp"

#include <algorithm>
#include <atomic>

namespace mackey {

DirectSum MackeyFunctor::value(const ObjSum& o) const {
    std::vector<AbGrp> parts;
    for (int c : o.comps) parts.push_back(level[c]);
    return direct_sum(parts);
}

const AbHom& MackeyFunctor::act_basis(const SpanBasisElt& s) const {
    auto it = act.find(s);
    require(it != act.end(), errc::internal, "mackey functor has no action for span");
    return it->second;
}

AbHom MackeyFunctor::act_on(const BurnsideHom& h) const {
    AbHom out = AbHom::zero(level[h.src_cls], level[h.dst_cls]);
    for (const auto& [s, n] : h.c) {
        const AbHom& a = act_basis(s);
        ZMat scaled(a.mat().rows(), a.mat().cols());
        for (int i = 0; i < scaled.rows(); ++i)
            for (int j = 0; j < scaled.cols(); ++j) scaled.at(i, j) = a.mat().at(i, j) * n;
        out = out + AbHom(out.src(), out.dst(), scaled);
    }
    return out;
}

AbHom MackeyFunctor::act_on(const SumHom& h) const {
    DirectSum s = value(h.src), d = value(h.dst);
    ZMat m(d.total.gens(), s.total.gens());
    for (int i = 0; i < h.src.size(); ++i)
        for (int j = 0; j < h.dst.size(); ++j) {
            AbHom block = act_on(h.at(i, j));
            for (int r = 0; r < block.mat().rows(); ++r)
                for (int c = 0; c < block.mat().cols(); ++c)
                    m.at(d.offset[j] + r, s.offset[i] + c) += block.mat().at(r, c);
        }
    return AbHom(s.total, d.total, m);
}

AbHom MackeyMorphism::at_sum(const ObjSum& o) const {
    DirectSum s = src->value(o), d = dst->value(o);
    ZMat m(d.total.gens(), s.total.gens());
    for (int i = 0; i < o.size(); ++i) {
        const ZMat& b = comp[o.comps[i]].mat();
        for (int r = 0; r < b.rows(); ++r)
            for (int c = 0; c < b.cols(); ++c) m.at(d.offset[i] + r, s.offset[i] + c) = b.at(r, c);
    }
    return AbHom(s.total, d.total, m);
}

AxiomReport check_axioms(const MackeyFunctor& m, const exec& ex) {
    const Cat& cat = m.cat;
    const int nc = cat->n_classes();
    std::vector<std::tuple<int, int, int>> triples;
    for (int h = 0; h < nc; ++h)
        for (int k = 0; k < nc; ++k)
            for (int j = 0; j < nc; ++j) triples.emplace_back(h, k, j);
    std::vector<std::vector<AxiomViolation>> found(triples.size());
    parallel_for(triples.size(), ex, [&](std::size_t t) {
        auto [h, k, j] = triples[t];
        for (const auto& s1 : cat->hom_basis(h, k))
            for (const auto& s2 : cat->hom_basis(k, j)) {
                AbHom lhs = m.act_on(cat->compose_basis(s2, s1));
                AbHom rhs = m.act_basis(s2).compose(m.act_basis(s1));
                if (!lhs.equals(rhs)) found[t].push_back(AxiomViolation{s1, s2});
            }
    });
    AxiomReport rep;
    for (auto& f : found)
        for (auto& v : f) rep.violations.push_back(std::move(v));
    // identity spans must act as the identity
    for (int c = 0; c < nc; ++c) {
        SpanBasisElt id = cat->identity_span(c);
        if (!m.act_basis(id).equals(AbHom::identity(m.level[c])))
            rep.violations.push_back(AxiomViolation{id, id});
    }
    return rep;
}

bool is_natural(const MackeyMorphism& f, const exec& ex) {
    const Cat& cat = f.src->cat;
    const int nc = cat->n_classes();
    std::vector<std::pair<int, int>> pairs;
    for (int h = 0; h < nc; ++h)
        for (int k = 0; k < nc; ++k) pairs.emplace_back(h, k);
    std::atomic<bool> ok{true};
    parallel_for(pairs.size(), ex, [&](std::size_t t) {
        if (!ok.load()) return;
        auto [h, k] = pairs[t];
        for (const auto& s : cat->hom_basis(h, k)) {
            AbHom lhs = f.dst->act_basis(s).compose(f.comp[h]);
            AbHom rhs = f.comp[k].compose(f.src->act_basis(s));
            if (!lhs.equals(rhs)) {
                ok.store(false);
                return;
            }
        }
    });
    return ok.load();
}

bool mackey_morphism_equal(const MackeyMorphism& a, const MackeyMorphism& b) {
    require(a.src->cat == b.src->cat, errc::parent_mismatch, "morphism comparison across categories");
    for (int c = 0; c < a.src->cat->n_classes(); ++c)
        if (!a.comp[c].equals(b.comp[c])) return false;
    return true;
}

bool mackey_iso_test(const MackeyMorphism& f, const exec& ex) {
    require(is_natural(f, ex), errc::not_natural, "mackey_iso_test: morphism is not natural");
    for (const auto& c : f.comp)
        if (!is_iso(c)) return false;
    return true;
}

MackeyMorphism mackey_identity(const MF& m) {
    MackeyMorphism f{m, m, {}};
    for (const auto& l : m->level) f.comp.push_back(AbHom::identity(l));
    return f;
}

MackeyMorphism mackey_compose(const MackeyMorphism& outer, const MackeyMorphism& inner) {
    MackeyMorphism f{inner.src, outer.dst, {}};
    for (std::size_t c = 0; c < inner.comp.size(); ++c) f.comp.push_back(outer.comp[c].compose(inner.comp[c]));
    return f;
}

MackeyMorphism mackey_invert(const MackeyMorphism& iso) {
    MackeyMorphism f{iso.dst, iso.src, {}};
    for (const auto& c : iso.comp) f.comp.push_back(invert(c));
    return f;
}

MackeyMorphism mackey_zero_morphism(const MF& src, const MF& dst) {
    MackeyMorphism f{src, dst, {}};
    for (int c = 0; c < src->cat->n_classes(); ++c) f.comp.push_back(AbHom::zero(src->level[c], dst->level[c]));
    return f;
}

MF zero_mackey(const Cat& cat) {
    auto m = std::make_shared<MackeyFunctor>();
    m->cat = cat;
    m->name = "0";
    m->level.assign(cat->n_classes(), AbGrp::zero());
    for (int h = 0; h < cat->n_classes(); ++h)
        for (int k = 0; k < cat->n_classes(); ++k)
            for (const auto& s : cat->hom_basis(h, k)) m->act.emplace(s, AbHom::zero(AbGrp::zero(), AbGrp::zero()));
    return m;
}

MF free_mackey(const Cat& cat, int h0) {
    auto m = std::make_shared<MackeyFunctor>();
    m->cat = cat;
    m->name = "free[" + cat->class_label(h0) + "]";
    for (int k = 0; k < cat->n_classes(); ++k) m->level.push_back(AbGrp::free_group((int)cat->hom_basis(h0, k).size()));
    for (int h = 0; h < cat->n_classes(); ++h) {
        const auto& bh = cat->hom_basis(h0, h);
        for (int k = 0; k < cat->n_classes(); ++k) {
            const auto& bk = cat->hom_basis(h0, k);
            for (const auto& s : cat->hom_basis(h, k)) {
                ZMat mat((int)bk.size(), (int)bh.size());
                for (std::size_t col = 0; col < bh.size(); ++col) {
                    BurnsideHom comp = cat->compose_basis(s, bh[col]);
                    for (const auto& [b, n] : comp.c) mat.at(cat->basis_index(b), (int)col) = n;
                }
                m->act.emplace(s, AbHom(m->level[h], m->level[k], std::move(mat)));
            }
        }
    }
    return m;
}

MackeyMorphism yoneda_morphism(const MF& fr, const MF& m, const ZMat& elem) {
    // fr = free at h0; elem is a column over m(G/h0)'s generators
    const Cat& cat = fr->cat;
    int h0 = -1;
    for (int c = 0; c < cat->n_classes(); ++c)
        if ((int)cat->hom_basis(c, c).size() >= 0 && fr->name == "free[" + cat->class_label(c) + "]") h0 = c;
    require(h0 >= 0, errc::internal, "yoneda_morphism needs a representable source");
    require(elem.cols() == 1 && elem.rows() == m->level[h0].gens(), errc::shape_mismatch, "yoneda element shape");
    MackeyMorphism f{fr, m, {}};
    for (int k = 0; k < cat->n_classes(); ++k) {
        const auto& basis = cat->hom_basis(h0, k);
        ZMat mat(m->level[k].gens(), (int)basis.size());
        for (std::size_t col = 0; col < basis.size(); ++col) {
            ZMat v = m->act_on(cat->basis_hom(basis[col])).mat() * elem;
            for (int r = 0; r < v.rows(); ++r) mat.at(r, (int)col) = v.at(r, 0);
        }
        f.comp.push_back(AbHom(fr->level[k], m->level[k], std::move(mat)));
    }
    return f;
}

ZMat yoneda_element(const MackeyMorphism& f) {
    const Cat& cat = f.src->cat;
    int h0 = -1;
    for (int c = 0; c < cat->n_classes(); ++c)
        if (f.src->name == "free[" + cat->class_label(c) + "]") h0 = c;
    require(h0 >= 0, errc::internal, "yoneda_element needs a representable source");
    int idx = cat->basis_index(cat->identity_span(h0));
    return f.comp[h0].mat().col(idx);
}

namespace {

MF assemble(const Cat& cat, std::vector<AbGrp> levels, std::map<SpanBasisElt, AbHom> act, std::string name) {
    auto m = std::make_shared<MackeyFunctor>();
    m->cat = cat;
    m->level = std::move(levels);
    m->act = std::move(act);
    m->name = std::move(name);
    return m;
}

} // namespace

MackeyColimit mackey_colimit(const MackeyDiagram& d) {
    require(!d.obj.empty(), errc::diagram_error, "colimit of empty mackey diagram");
    const Cat& cat = d.obj[0]->cat;
    for (const auto& o : d.obj) require(o->cat == cat, errc::diagram_error, "colimit diagram spans categories");
    const int nc = cat->n_classes();

    MackeyColimit out;
    std::vector<AbDiagram> per_class(nc);
    for (int c = 0; c < nc; ++c) {
        for (const auto& o : d.obj) per_class[c].obj.push_back(o->level[c]);
        for (const auto& e : d.edges) per_class[c].edges.push_back(AbDiagram::Edge{e.src, e.dst, e.h.comp[c]});
        out.per_class.push_back(finite_colimit(per_class[c]));
    }
    // raw colimit functor, then compress levelwise
    std::vector<AbGrp> raw_levels;
    for (int c = 0; c < nc; ++c) raw_levels.push_back(out.per_class[c].value);
    std::map<SpanBasisElt, AbHom> raw_act;
    for (int h = 0; h < nc; ++h)
        for (int k = 0; k < nc; ++k)
            for (const auto& s : cat->hom_basis(h, k)) {
                std::vector<AbHom> competing;
                for (std::size_t i = 0; i < d.obj.size(); ++i)
                    competing.push_back(out.per_class[k].cocone[i].compose(d.obj[i]->act_basis(s)));
                raw_act.emplace(s, colimit_induced(per_class[h], out.per_class[h], raw_levels[k], competing));
            }
    for (int c = 0; c < nc; ++c) out.squeeze.push_back(smith_decompose(raw_levels[c]));
    std::vector<AbGrp> levels;
    for (int c = 0; c < nc; ++c) levels.push_back(out.squeeze[c].canon);
    std::map<SpanBasisElt, AbHom> act;
    for (auto& [s, a] : raw_act)
        act.emplace(s, out.squeeze[s.k_cls].to_canon.compose(a).compose(out.squeeze[s.h_cls].from_canon));
    out.value = assemble(cat, std::move(levels), std::move(act), "colim");
    for (std::size_t i = 0; i < d.obj.size(); ++i) {
        MackeyMorphism c{d.obj[i], out.value, {}};
        for (int cl = 0; cl < nc; ++cl)
            c.comp.push_back(out.squeeze[cl].to_canon.compose(out.per_class[cl].cocone[i]));
        out.cocone.push_back(std::move(c));
    }
    return out;
}

MackeyMorphism mackey_colimit_induced(const MackeyDiagram& d, const MackeyColimit& c, const MF& target,
                                      const std::vector<MackeyMorphism>& competing) {
    const Cat& cat = c.value->cat;
    const int nc = cat->n_classes();
    // verify the competing maps commute over every edge (cocone condition)
    for (const auto& e : d.edges) {
        if (!mackey_morphism_equal(mackey_compose(competing[e.dst], e.h), competing[e.src]))
            fail(errc::cocone_failure, "competing cocone does not commute with a diagram edge");
    }
    MackeyMorphism f{c.value, target, {}};
    for (int cl = 0; cl < nc; ++cl) {
        AbDiagram dia;
        for (const auto& o : d.obj) dia.obj.push_back(o->level[cl]);
        for (const auto& e : d.edges) dia.edges.push_back(AbDiagram::Edge{e.src, e.dst, e.h.comp[cl]});
        std::vector<AbHom> comp;
        for (const auto& g : competing) comp.push_back(g.comp[cl]);
        f.comp.push_back(colimit_induced(dia, c.per_class[cl], target->level[cl], comp).compose(c.squeeze[cl].from_canon));
    }
    return f;
}

MackeyLimit mackey_limit(const MackeyDiagram& d) {
    require(!d.obj.empty(), errc::diagram_error, "limit of empty mackey diagram");
    const Cat& cat = d.obj[0]->cat;
    const int nc = cat->n_classes();
    MackeyLimit out;
    std::vector<AbDiagram> per_class(nc);
    for (int c = 0; c < nc; ++c) {
        for (const auto& o : d.obj) per_class[c].obj.push_back(o->level[c]);
        for (const auto& e : d.edges) per_class[c].edges.push_back(AbDiagram::Edge{e.src, e.dst, e.h.comp[c]});
        out.per_class.push_back(finite_limit(per_class[c]));
    }
    std::vector<AbGrp> raw_levels;
    for (int c = 0; c < nc; ++c) raw_levels.push_back(out.per_class[c].value);
    std::map<SpanBasisElt, AbHom> raw_act;
    for (int h = 0; h < nc; ++h)
        for (int k = 0; k < nc; ++k)
            for (const auto& s : cat->hom_basis(h, k)) {
                std::vector<AbHom> competing;
                for (std::size_t i = 0; i < d.obj.size(); ++i)
                    competing.push_back(d.obj[i]->act_basis(s).compose(out.per_class[h].cone[i]));
                raw_act.emplace(s, limit_induced(per_class[k], out.per_class[k], raw_levels[h], competing));
            }
    for (int c = 0; c < nc; ++c) out.squeeze.push_back(smith_decompose(raw_levels[c]));
    std::vector<AbGrp> levels;
    for (int c = 0; c < nc; ++c) levels.push_back(out.squeeze[c].canon);
    std::map<SpanBasisElt, AbHom> act;
    for (auto& [s, a] : raw_act)
        act.emplace(s, out.squeeze[s.k_cls].to_canon.compose(a).compose(out.squeeze[s.h_cls].from_canon));
    out.value = assemble(cat, std::move(levels), std::move(act), "lim");
    for (std::size_t i = 0; i < d.obj.size(); ++i) {
        MackeyMorphism c{out.value, d.obj[i], {}};
        for (int cl = 0; cl < nc; ++cl)
            c.comp.push_back(out.per_class[cl].cone[i].compose(out.squeeze[cl].from_canon));
        out.cone.push_back(std::move(c));
    }
    return out;
}

MackeyMorphism mackey_limit_induced(const MackeyDiagram& d, const MackeyLimit& l, const MF& source,
                                    const std::vector<MackeyMorphism>& competing) {
    const Cat& cat = l.value->cat;
    const int nc = cat->n_classes();
    for (const auto& e : d.edges) {
        if (!mackey_morphism_equal(mackey_compose(e.h, competing[e.src]), competing[e.dst]))
            fail(errc::cocone_failure, "competing cone does not commute with a diagram edge");
    }
    MackeyMorphism f{source, l.value, {}};
    for (int cl = 0; cl < nc; ++cl) {
        AbDiagram dia;
        for (const auto& o : d.obj) dia.obj.push_back(o->level[cl]);
        for (const auto& e : d.edges) dia.edges.push_back(AbDiagram::Edge{e.src, e.dst, e.h.comp[cl]});
        std::vector<AbHom> comp;
        for (const auto& g : competing) comp.push_back(g.comp[cl]);
        f.comp.push_back(l.squeeze[cl].to_canon.compose(limit_induced(dia, l.per_class[cl], source->level[cl], comp)));
    }
    return f;
}

MackeySum mackey_direct_sum(const std::vector<MF>& parts) {
    MackeyDiagram d;
    d.obj = parts;
    MackeyColimit c = mackey_colimit(d);
    MackeySum out;
    out.value = c.value;
    out.incl = c.cocone;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        std::vector<MackeyMorphism> competing;
        for (std::size_t j = 0; j < parts.size(); ++j)
            competing.push_back(i == j ? mackey_identity(parts[i]) : mackey_zero_morphism(parts[j], parts[i]));
        out.proj.push_back(mackey_colimit_induced(d, c, parts[i], competing));
    }
    return out;
}

CompressedMackey compress(const MF& m) {
    const Cat& cat = m->cat;
    const int nc = cat->n_classes();
    std::vector<SmithDecomp> sd;
    for (int c = 0; c < nc; ++c) sd.push_back(smith_decompose(m->level[c]));
    std::vector<AbGrp> levels;
    for (int c = 0; c < nc; ++c) levels.push_back(sd[c].canon);
    std::map<SpanBasisElt, AbHom> act;
    for (const auto& [s, a] : m->act)
        act.emplace(s, sd[s.k_cls].to_canon.compose(a).compose(sd[s.h_cls].from_canon));
    CompressedMackey out;
    out.value = assemble(cat, std::move(levels), std::move(act), m->name);
    out.to = MackeyMorphism{m, out.value, {}};
    out.from = MackeyMorphism{out.value, m, {}};
    for (int c = 0; c < nc; ++c) {
        out.to.comp.push_back(sd[c].to_canon);
        out.from.comp.push_back(sd[c].from_canon);
    }
    return out;
}

bool GModule::valid() const {
    if ((int)act.size() != g->order()) return false;
    if (!act[0].equals(AbHom::identity(carrier))) return false;
    for (int a = 0; a < g->order(); ++a) {
        if (!act[a].is_valid()) return false;
        for (int b = 0; b < g->order(); ++b)
            if (!act[g->mul(a, b)].equals(act[a].compose(act[b]))) return false;
    }
    return true;
}

bool GModuleHom::equivariant() const {
    for (int e = 0; e < src->g->order(); ++e)
        if (!h.compose(src->act[e]).equals(dst->act[e].compose(h))) return false;
    return true;
}

namespace {

// kernel of x |-> (act(h) x - x) over the generators of the subgroup
AbGrp fixed_subgroup(const GModule& v, const std::vector<int>& elems, AbHom* incl) {
    std::vector<AbGrp> targets;
    ZMat stacked(0, v.carrier.gens());
    std::vector<ZMat> blocks;
    for (int e : elems) {
        if (e == 0) continue;
        blocks.push_back(v.act[e].mat() - ZMat::identity(v.carrier.gens()));
    }
    if (blocks.empty()) {
        if (incl) *incl = AbHom::identity(v.carrier);
        return v.carrier;
    }
    std::vector<AbGrp> parts(blocks.size(), v.carrier);
    DirectSum ds = direct_sum(parts);
    ZMat m(ds.total.gens(), v.carrier.gens());
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (int r = 0; r < blocks[b].rows(); ++r)
            for (int c = 0; c < blocks[b].cols(); ++c) m.at(ds.offset[b] + r, c) = blocks[b].at(r, c);
    AbHom diff(v.carrier, ds.total, m);
    return kernel_of(diff, incl);
}

} // namespace

MF fixed_point_mackey(const Cat& cat, const GModule& v) {
    require(cat->group() == v.g, errc::parent_mismatch, "fixed_point_mackey: module over another group");
    const Group& g = v.g;
    const int nc = cat->n_classes();
    auto m = std::make_shared<MackeyFunctor>();
    m->cat = cat;
    m->name = "fix[" + v.carrier.str() + "]";
    std::vector<AbHom> incl(nc);
    for (int c = 0; c < nc; ++c) m->level.push_back(fixed_subgroup(v, cat->cls_rep(c).elems, &incl[c]));
    for (int h = 0; h < nc; ++h)
        for (int k = 0; k < nc; ++k)
            for (const auto& s : cat->hom_basis(h, k)) {
                // y = sum over cosets cL with c*rrep in K of act(c * lrep) x
                CosetSpace mid = coset_space(g, s.mid);
                const Subgroup& krep = cat->cls_rep(s.k_cls);
                ZMat sum(v.carrier.gens(), v.carrier.gens());
                for (int p = 0; p < mid.set.n; ++p) {
                    int c = mid.rep[p];
                    if (!krep.contains(g->mul(c, s.rrep))) continue;
                    const ZMat& a = v.act[g->mul(c, s.lrep)].mat();
                    sum = sum + a;
                }
                AbHom total(v.carrier, v.carrier, sum);
                AbHom to_carrier = total.compose(incl[h]);
                m->act.emplace(s, factor_through_mono(incl[k], to_carrier));
            }
    return m;
}

GModuleFixed gmodule_fixed_points(const GrpHom& q, const GModule& v) {
    require(q.is_surjective(), errc::not_surjective, "gmodule_fixed_points needs a surjection");
    require(q.src == v.g, errc::parent_mismatch, "gmodule_fixed_points: module over another group");
    Subgroup n = q.kernel();
    GModuleFixed out;
    AbHom incl;
    AbGrp fixed = fixed_subgroup(v, n.elems, &incl);
    out.incl = incl;
    out.value.g = q.dst;
    out.value.carrier = fixed;
    for (int y = 0; y < q.dst->order(); ++y) {
        int rep = -1;
        for (int e = 0; e < q.src->order() && rep < 0; ++e)
            if (q.img[e] == y) rep = e;
        out.value.act.push_back(factor_through_mono(incl, v.act[rep].compose(incl)));
    }
    return out;
}

AbHom gmodule_fixed_points_map(const GModuleFixed& a, const GModuleFixed& b, const AbHom& f) {
    return factor_through_mono(b.incl, f.compose(a.incl));
}

} // namespace mackey

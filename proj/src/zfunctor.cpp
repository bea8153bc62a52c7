#include "mackey/zfunctor.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace mackey {

ObjImage ident_gset(const Cat& cat, const GSet& x) {
    require(cat->group() == x.g, errc::parent_mismatch, "ident_gset: set over another group");
    ObjImage out;
    out.nat_points = x.n;
    out.point_map.resize(x.n);
    std::vector<int> med_u(x.orbit_count());
    for (int o = 0; o < x.orbit_count(); ++o) {
        auto [cls, u] = cat->mediating(x.stabilizer(x.base[o]));
        out.sum.comps.push_back(cls);
        med_u[o] = u;
    }
    const Group& g = cat->group();
    for (int p = 0; p < x.n; ++p) {
        int o = x.orbit_of[p];
        const CosetSpace& r = cat->realization(out.sum.comps[o]);
        out.point_map[p] = SumPoint{o, r.coset_of[g->mul(x.transporter[p], med_u[o])]};
    }
    return out;
}

ObjSum ZLinFunctor::on_obj(const ObjSum& o) const {
    ObjSum out;
    for (int c : o.comps)
        for (int d : obj[c].sum.comps) out.comps.push_back(d);
    return out;
}

const SumHom& ZLinFunctor::on_basis(const SpanBasisElt& s) const {
    auto it = span_img.find(s);
    require(it != span_img.end(), errc::internal, "functor has no image for span");
    return it->second;
}

SumHom ZLinFunctor::on_hom(const BurnsideHom& h) const {
    SumHom out = dst->zero_sum_hom(obj[h.src_cls].sum, obj[h.dst_cls].sum);
    for (const auto& [s, n] : h.c) {
        const SumHom& img = on_basis(s);
        for (std::size_t i = 0; i < img.e.size(); ++i) out.e[i] += img.e[i].scaled(n);
    }
    return out;
}

SumHom ZLinFunctor::on_sumhom(const SumHom& h) const {
    ObjSum s = on_obj(h.src), d = on_obj(h.dst);
    SumHom out = dst->zero_sum_hom(s, d);
    std::vector<int> soff(h.src.size() + 1, 0), doff(h.dst.size() + 1, 0);
    for (int i = 0; i < h.src.size(); ++i) soff[i + 1] = soff[i] + obj[h.src.comps[i]].sum.size();
    for (int j = 0; j < h.dst.size(); ++j) doff[j + 1] = doff[j] + obj[h.dst.comps[j]].sum.size();
    for (int i = 0; i < h.src.size(); ++i)
        for (int j = 0; j < h.dst.size(); ++j) {
            SumHom img = on_hom(h.at(i, j));
            for (int a = 0; a < img.src.size(); ++a)
                for (int b = 0; b < img.dst.size(); ++b) out.at(soff[i] + a, doff[j] + b) += img.at(a, b);
        }
    return out;
}

bool ZLinFunctor::point_preserving() const {
    for (int c = 0; c < src->n_classes(); ++c)
        if (obj[c].nat_points != src->realization(c).set.n) return false;
    return true;
}

namespace {

// Shared build: the middle of every basis span is realized as a set over the
// target group, legs land in natural realizations and are pushed through the
// object identifications.
struct NatData {
    GSet w;                      // middle, as a set over the destination group
    std::vector<int> lnat, rnat; // per point, natural point of obj(h), obj(k)
};

std::shared_ptr<ZLinFunctor> build_functor(const Cat& src, const Cat& dst, GrpHom hom, const std::string& tag,
                                           const std::function<GSet(int)>& nat_obj,
                                           const std::function<NatData(const SpanBasisElt&)>& nat_span) {
    auto f = std::make_shared<ZLinFunctor>();
    f->src = src;
    f->dst = dst;
    f->hom = std::move(hom);
    f->tag = tag;
    for (int c = 0; c < src->n_classes(); ++c) f->obj.push_back(ident_gset(dst, nat_obj(c)));
    for (int h = 0; h < src->n_classes(); ++h)
        for (int k = 0; k < src->n_classes(); ++k)
            for (const auto& s : src->hom_basis(h, k)) {
                NatData nd = nat_span(s);
                std::vector<SumPoint> lleg(nd.w.n), rleg(nd.w.n);
                for (int p = 0; p < nd.w.n; ++p) {
                    lleg[p] = f->obj[h].point_map[nd.lnat[p]];
                    rleg[p] = f->obj[k].point_map[nd.rnat[p]];
                }
                f->span_img.emplace(s, dst->expand_span(nd.w, lleg, f->obj[h].sum, rleg, f->obj[k].sum));
            }
    return f;
}

} // namespace

Fun functor_identity(const Cat& cat) {
    auto f = std::make_shared<ZLinFunctor>();
    f->src = cat;
    f->dst = cat;
    f->hom = identity_hom(cat->group());
    f->tag = "id[" + cat->group()->label() + "]";
    for (int c = 0; c < cat->n_classes(); ++c) {
        ObjImage im;
        im.sum = ObjSum::single(c);
        im.nat_points = cat->realization(c).set.n;
        im.point_map.resize(im.nat_points);
        for (int p = 0; p < im.nat_points; ++p) im.point_map[p] = SumPoint{0, p};
        f->obj.push_back(std::move(im));
    }
    for (int h = 0; h < cat->n_classes(); ++h)
        for (int k = 0; k < cat->n_classes(); ++k)
            for (const auto& s : cat->hom_basis(h, k)) {
                SumHom img = cat->zero_sum_hom(ObjSum::single(h), ObjSum::single(k));
                img.at(0, 0) = cat->basis_hom(s);
                f->span_img.emplace(s, std::move(img));
            }
    f->checked = true;
    return f;
}

Fun functor_ind(const Cat& src, const Cat& dst, const GrpHom& i) {
    require(i.is_injective(), errc::not_injective, "functor_ind needs an injective homomorphism");
    require(i.src == src->group() && i.dst == dst->group(), errc::parent_mismatch, "functor_ind groups");
    const Group& g = dst->group();
    auto push = [&, i](const std::vector<int>& elems) {
        std::vector<int> out;
        for (int e : elems) out.push_back(i.img[e]);
        std::sort(out.begin(), out.end());
        return out;
    };
    return build_functor(
        src, dst, i, "ind[" + i.src->label() + "->" + i.dst->label() + "]",
        [&](int c) { return coset_space(g, push(src->cls_rep(c).elems)).set; },
        [&](const SpanBasisElt& s) {
            NatData nd;
            CosetSpace w = coset_space(g, push(s.mid));
            CosetSpace wh = coset_space(g, push(src->cls_rep(s.h_cls).elems));
            CosetSpace wk = coset_space(g, push(src->cls_rep(s.k_cls).elems));
            nd.w = w.set;
            nd.lnat.resize(w.set.n);
            nd.rnat.resize(w.set.n);
            for (int p = 0; p < w.set.n; ++p) {
                nd.lnat[p] = wh.coset_of[g->mul(w.rep[p], i.img[s.lrep])];
                nd.rnat[p] = wk.coset_of[g->mul(w.rep[p], i.img[s.rrep])];
            }
            return nd;
        });
}

Fun functor_res(const Cat& src, const Cat& dst, const GrpHom& i) {
    require(i.is_injective(), errc::not_injective, "functor_res needs an injective homomorphism");
    require(i.dst == src->group() && i.src == dst->group(), errc::parent_mismatch, "functor_res groups");
    const Group& g = src->group();
    return build_functor(
        src, dst, i, "res[" + i.dst->label() + "->" + i.src->label() + "]",
        [&](int c) { return restrict_gset(src->realization(c).set, i); },
        [&](const SpanBasisElt& s) {
            NatData nd;
            CosetSpace m = coset_space(g, s.mid);
            nd.w = restrict_gset(m.set, i);
            nd.lnat.resize(m.set.n);
            nd.rnat.resize(m.set.n);
            for (int p = 0; p < m.set.n; ++p) {
                nd.lnat[p] = src->realization(s.h_cls).coset_of[g->mul(m.rep[p], s.lrep)];
                nd.rnat[p] = src->realization(s.k_cls).coset_of[g->mul(m.rep[p], s.rrep)];
            }
            return nd;
        });
}

Fun functor_infl(const Cat& src, const Cat& dst, const GrpHom& q) {
    require(q.is_surjective(), errc::not_surjective, "functor_infl needs a surjective homomorphism");
    require(q.dst == src->group() && q.src == dst->group(), errc::parent_mismatch, "functor_infl groups");
    const Group& qg = src->group();
    return build_functor(
        src, dst, q, "infl[" + q.dst->label() + "->" + q.src->label() + "]",
        [&](int c) { return restrict_gset(src->realization(c).set, q); },
        [&](const SpanBasisElt& s) {
            NatData nd;
            CosetSpace m = coset_space(qg, s.mid);
            nd.w = restrict_gset(m.set, q);
            nd.lnat.resize(m.set.n);
            nd.rnat.resize(m.set.n);
            for (int p = 0; p < m.set.n; ++p) {
                nd.lnat[p] = src->realization(s.h_cls).coset_of[qg->mul(m.rep[p], s.lrep)];
                nd.rnat[p] = src->realization(s.k_cls).coset_of[qg->mul(m.rep[p], s.rrep)];
            }
            return nd;
        });
}

Fun compose_functors(const Fun& f2, const Fun& f1) {
    require(f1->dst == f2->src, errc::compose_error, "functor composition");
    auto f = std::make_shared<ZLinFunctor>();
    f->src = f1->src;
    f->dst = f2->dst;
    f->tag = f2->tag + "*" + f1->tag;
    bool pp = f2->point_preserving();
    for (int c = 0; c < f1->src->n_classes(); ++c) {
        ObjImage im;
        im.sum = f2->on_obj(f1->obj[c].sum);
        if (pp) {
            im.nat_points = f1->obj[c].nat_points;
            im.point_map.resize(im.nat_points);
            std::vector<int> off(f1->obj[c].sum.size() + 1, 0);
            for (int i = 0; i < f1->obj[c].sum.size(); ++i)
                off[i + 1] = off[i] + f2->obj[f1->obj[c].sum.comps[i]].sum.size();
            for (int p = 0; p < im.nat_points; ++p) {
                SumPoint s1 = f1->obj[c].point_map[p];
                SumPoint s2 = f2->obj[f1->obj[c].sum.comps[s1.comp]].point_map[s1.pt];
                im.point_map[p] = SumPoint{off[s1.comp] + s2.comp, s2.pt};
            }
        }
        f->obj.push_back(std::move(im));
    }
    for (const auto& [s, img] : f1->span_img) f->span_img.emplace(s, f2->on_sumhom(img));
    f->checked = f1->checked && f2->checked;
    return f;
}

bool functor_equal(const ZLinFunctor& a, const ZLinFunctor& b) {
    if (a.src != b.src || a.dst != b.dst) return false;
    for (int c = 0; c < a.src->n_classes(); ++c)
        if (!(a.obj[c].sum == b.obj[c].sum)) return false;
    return a.span_img == b.span_img;
}

bool verify_functor(const ZLinFunctor& f, std::string* why) {
    auto explain = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    for (int c = 0; c < f.src->n_classes(); ++c) {
        if (!(f.on_basis(f.src->identity_span(c)) == f.dst->identity_sum_hom(f.obj[c].sum)))
            return explain("identity not preserved at class " + std::to_string(c));
    }
    for (int h = 0; h < f.src->n_classes(); ++h)
        for (int k = 0; k < f.src->n_classes(); ++k)
            for (int j = 0; j < f.src->n_classes(); ++j)
                for (const auto& s1 : f.src->hom_basis(h, k))
                    for (const auto& s2 : f.src->hom_basis(k, j)) {
                        SumHom lhs = f.on_hom(f.src->compose_basis(s2, s1));
                        SumHom rhs = f.dst->compose(f.on_basis(s2), f.on_basis(s1));
                        if (!(lhs == rhs)) {
                            std::ostringstream os;
                            os << "composition not preserved on pair (" << h << "," << k << "," << j << ")";
                            return explain(os.str());
                        }
                    }
    return true;
}

Fun verified(Fun f) {
    std::string why;
    require(verify_functor(*f, &why), errc::unverified_functor, f->tag + ": " + why);
    auto mf = std::const_pointer_cast<ZLinFunctor>(f);
    mf->checked = true;
    return f;
}

namespace {

// Additive extension of per-class sum homs over a formal sum.
SumHom block_ext(const Cat& cat, const ObjSum& comps, const std::vector<SumHom>& per_class, bool src_is_plain) {
    // src_is_plain: parts go from single classes (true) or to single classes (false)
    ObjSum total_src, total_dst;
    for (int c : comps.comps) {
        const SumHom& part = per_class[c];
        for (int x : part.src.comps) total_src.comps.push_back(x);
        for (int x : part.dst.comps) total_dst.comps.push_back(x);
    }
    (void)src_is_plain;
    SumHom out = cat->zero_sum_hom(total_src, total_dst);
    int so = 0, dof = 0;
    for (int c : comps.comps) {
        const SumHom& part = per_class[c];
        for (int i = 0; i < part.src.size(); ++i)
            for (int j = 0; j < part.dst.size(); ++j) out.at(so + i, dof + j) = part.at(i, j);
        so += part.src.size();
        dof += part.dst.size();
    }
    return out;
}

} // namespace

IndResPair ind_res_pair(const Cat& chome, const Cat& cbig, const GrpHom& i) {
    IndResPair out;
    out.ind = functor_ind(chome, cbig, i);
    out.res = functor_res(cbig, chome, i);
    const Group& g = cbig->group();
    const Group& h = chome->group();

    // unit of ind -| res at an H-orbit S: the forward span of hL -> i(h)i(L)
    auto ri = compose_functors(out.res, out.ind);
    for (int s = 0; s < chome->n_classes(); ++s) {
        const CosetSpace& rs = chome->realization(s);
        std::vector<int> pushed;
        for (int e : chome->cls_rep(s).elems) pushed.push_back(i.img[e]);
        std::sort(pushed.begin(), pushed.end());
        CosetSpace nat = coset_space(g, pushed);
        std::vector<SumPoint> lleg(rs.set.n), rleg(rs.set.n);
        for (int p = 0; p < rs.set.n; ++p) {
            lleg[p] = SumPoint{0, p};
            rleg[p] = ri->obj[s].point_map[nat.coset_of[i.img[rs.rep[p]]]];
        }
        out.unit1.push_back(chome->expand_span(rs.set, lleg, ObjSum::single(s), rleg, ri->obj[s].sum));
    }

    // counit of ind -| res at a G-orbit T: per H-orbit of the restriction,
    // the forward span of x i(L_c) -> x i(u_c)^-1 b_c
    for (int t = 0; t < cbig->n_classes(); ++t) {
        GSet restr = restrict_gset(cbig->realization(t).set, i);
        ObjSum src_sum = out.ind->on_obj(out.res->obj[t].sum);
        SumHom cu = cbig->zero_sum_hom(src_sum, ObjSum::single(t));
        require(src_sum.size() == restr.orbit_count(), errc::internal, "counit component mismatch");
        for (int o = 0; o < restr.orbit_count(); ++o) {
            Subgroup stab_h = restr.stabilizer(restr.base[o]); // subgroup of H
            auto [lcls, u_c] = chome->mediating(stab_h);
            std::vector<int> mid; // i(rep_lcls), the middle the induction identified
            for (int e : chome->cls_rep(lcls).elems) mid.push_back(i.img[e]);
            std::sort(mid.begin(), mid.end());
            auto [dcls, uprime] = cbig->mediating(Subgroup{g, mid});
            require(src_sum.comps[o] == dcls, errc::internal, "counit class mismatch");
            int beta = cbig->realization(t).rep[restr.base[o]];
            int relem = g->mul(g->inv(i.img[u_c]), beta);
            cu.at(o, 0).add(cbig->canonical(dcls, t, mid, uprime, relem), 1);
        }
        out.counit1.push_back(std::move(cu));
    }

    for (int t = 0; t < cbig->n_classes(); ++t) out.unit2.push_back(cbig->transpose(out.counit1[t]));
    for (int s = 0; s < chome->n_classes(); ++s) out.counit2.push_back(chome->transpose(out.unit1[s]));
    (void)h;
    return out;
}

IndResPair ind_res_identity(const Cat& cat) {
    IndResPair out;
    out.ind = functor_identity(cat);
    out.res = out.ind;
    for (int c = 0; c < cat->n_classes(); ++c) {
        SumHom id = cat->identity_sum_hom(ObjSum::single(c));
        out.unit1.push_back(id);
        out.counit1.push_back(id);
        out.unit2.push_back(id);
        out.counit2.push_back(id);
    }
    return out;
}

bool verify_ind_res(const IndResPair& p, std::string* why) {
    const Cat& ch = p.ind->src;
    const Cat& cg = p.ind->dst;
    auto explain = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    // triangles for ind -| res
    for (int t = 0; t < cg->n_classes(); ++t) {
        SumHom unit_at_rest = block_ext(ch, p.res->obj[t].sum, p.unit1, true);
        SumHom lhs = ch->compose(p.res->on_sumhom(p.counit1[t]), unit_at_rest);
        if (!(lhs == ch->identity_sum_hom(p.res->obj[t].sum)))
            return explain("triangle (res eps)(eta res) fails at class " + std::to_string(t));
    }
    for (int s = 0; s < ch->n_classes(); ++s) {
        int d = p.ind->obj[s].sum.comps[0];
        SumHom lhs = cg->compose(p.counit1[d], p.ind->on_sumhom(p.unit1[s]));
        if (!(lhs == cg->identity_sum_hom(p.ind->obj[s].sum)))
            return explain("triangle (eps ind)(ind eta) fails at class " + std::to_string(s));
    }
    // triangles for res -| ind
    for (int t = 0; t < cg->n_classes(); ++t) {
        SumHom counit_at_rest = block_ext(ch, p.res->obj[t].sum, p.counit2, false);
        SumHom lhs = ch->compose(counit_at_rest, p.res->on_sumhom(p.unit2[t]));
        if (!(lhs == ch->identity_sum_hom(p.res->obj[t].sum)))
            return explain("triangle (eps2 res)(res eta2) fails at class " + std::to_string(t));
    }
    for (int s = 0; s < ch->n_classes(); ++s) {
        int d = p.ind->obj[s].sum.comps[0];
        SumHom lhs = cg->compose(p.ind->on_sumhom(p.counit2[s]), p.unit2[d]);
        if (!(lhs == cg->identity_sum_hom(p.ind->obj[s].sum)))
            return explain("triangle (ind eps2)(eta2 ind) fails at class " + std::to_string(s));
    }
    return true;
}

} // namespace mackey

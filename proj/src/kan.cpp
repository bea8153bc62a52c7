#include "mackey/kan.hpp"

#include <algorithm>
#include <map>

namespace mackey {

MF precompose(const Fun& f, const MF& m) {
    require(f->checked, errc::unverified_functor, "precompose: functor not verified");
    require(m->cat == f->dst, errc::parent_mismatch, "precompose: functor and mackey functor disagree");
    auto out = std::make_shared<MackeyFunctor>();
    out->cat = f->src;
    out->name = m->name + "." + f->tag;
    for (int a = 0; a < f->src->n_classes(); ++a) out->level.push_back(m->value(f->obj[a].sum).total);
    for (int h = 0; h < f->src->n_classes(); ++h)
        for (int k = 0; k < f->src->n_classes(); ++k)
            for (const auto& s : f->src->hom_basis(h, k)) out->act.emplace(s, m->act_on(f->on_basis(s)));
    return out;
}

MackeyMorphism precompose_apply(const Fun& f, const MF& pre_src, const MF& pre_dst, const MackeyMorphism& g) {
    MackeyMorphism out{pre_src, pre_dst, {}};
    for (int a = 0; a < f->src->n_classes(); ++a) {
        AbHom block = g.at_sum(f->obj[a].sum);
        out.comp.push_back(AbHom(pre_src->level[a], pre_dst->level[a], block.mat()));
    }
    return out;
}

// ---- lan -------------------------------------------------------------------

namespace {

int find_key_lan(const std::vector<LanResult::GenKey>& keys, int a, int c, int beta) {
    for (std::size_t i = 0; i < keys.size(); ++i)
        if (keys[i].a == a && keys[i].c == c && keys[i].beta == beta) return (int)i;
    fail(errc::internal, "lan generator key not found");
}

int find_key_ran(const std::vector<RanResult::GenKey>& keys, int a, int c, int gamma) {
    for (std::size_t i = 0; i < keys.size(); ++i)
        if (keys[i].a == a && keys[i].c == c && keys[i].gamma == gamma) return (int)i;
    fail(errc::internal, "ran slot key not found");
}

} // namespace

AbHom LanResult::gen_embed(int b, int key_index) const {
    const AbGrp& part = source->level[keys[b][key_index].a];
    const AbHom& to = squeeze[b].to_canon;
    ZMat m(to.dst().gens(), part.gens());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < part.gens(); ++c) m.at(r, c) = to.mat().at(r, offsets[b][key_index] + c);
    return AbHom(part, value->level[b], std::move(m));
}

LanResult lan(const Fun& f, const MF& m) {
    require(f->checked, errc::unverified_functor, "lan: functor not verified");
    require(m->cat == f->src, errc::parent_mismatch, "lan: source category mismatch");
    const Cat& ca = f->src;
    const Cat& cb = f->dst;
    LanResult out;
    out.f = f;
    out.source = m;
    const int na = ca->n_classes(), nb = cb->n_classes();
    out.keys.resize(nb);
    out.offsets.resize(nb);
    out.raw_gens.resize(nb);

    std::vector<AbGrp> raw(nb, AbGrp::zero());
    for (int b = 0; b < nb; ++b) {
        auto& keys = out.keys[b];
        auto& offs = out.offsets[b];
        int gens = 0;
        for (int a = 0; a < na; ++a)
            for (int c = 0; c < f->obj[a].sum.size(); ++c) {
                int nbasis = (int)cb->hom_basis(f->obj[a].sum.comps[c], b).size();
                for (int beta = 0; beta < nbasis; ++beta) {
                    keys.push_back(LanResult::GenKey{a, c, beta});
                    offs.push_back(gens);
                    gens += m->level[a].gens();
                }
            }
        out.raw_gens[b] = gens;

        // relations: per-block source relations, then the coend identifications
        int total_cols = 0;
        for (std::size_t k = 0; k < keys.size(); ++k) total_cols += m->level[keys[k].a].rels().cols();
        for (int a = 0; a < na; ++a)
            for (int a2 = 0; a2 < na; ++a2)
                for (const auto& phi : ca->hom_basis(a, a2)) {
                    if (a == a2 && phi == ca->identity_span(a)) continue; // contributes zero columns
                    for (std::size_t k = 0; k < keys.size(); ++k)
                        if (keys[k].a == a2) total_cols += m->level[a].gens();
                }
        ZMat rels(gens, total_cols);
        int col = 0;
        for (std::size_t k = 0; k < keys.size(); ++k) {
            const ZMat& r = m->level[keys[k].a].rels();
            for (int j = 0; j < r.cols(); ++j, ++col)
                for (int i = 0; i < r.rows(); ++i) rels.at(offs[k] + i, col) = r.at(i, j);
        }
        for (int a = 0; a < na; ++a)
            for (int a2 = 0; a2 < na; ++a2)
                for (const auto& phi : ca->hom_basis(a, a2)) {
                    if (a == a2 && phi == ca->identity_span(a)) continue;
                    const SumHom& fphi = f->on_basis(phi);
                    const AbHom& mphi = m->act_basis(phi);
                    for (int c2 = 0; c2 < f->obj[a2].sum.size(); ++c2) {
                        const auto& basis2 = cb->hom_basis(f->obj[a2].sum.comps[c2], b);
                        for (int beta2 = 0; beta2 < (int)basis2.size(); ++beta2) {
                            int k2 = find_key_lan(keys, a2, c2, beta2);
                            for (int g = 0; g < m->level[a].gens(); ++g)
                                for (int r = 0; r < m->level[a2].gens(); ++r)
                                    rels.at(offs[k2] + r, col + g) = mphi.mat().at(r, g);
                            for (int c1 = 0; c1 < f->obj[a].sum.size(); ++c1) {
                                BurnsideHom comp = cb->compose(cb->basis_hom(basis2[beta2]), fphi.at(c1, c2));
                                for (const auto& [sb, n] : comp.c) {
                                    int k1 = find_key_lan(keys, a, c1, cb->basis_index(sb));
                                    for (int g = 0; g < m->level[a].gens(); ++g)
                                        rels.at(offs[k1] + g, col + g) -= n;
                                }
                            }
                            col += m->level[a].gens();
                        }
                    }
                }
        require(col == total_cols, errc::internal, "lan relation layout");
        raw[b] = AbGrp(gens, std::move(rels));
        out.squeeze.push_back(smith_decompose(raw[b]));
    }

    auto val = std::make_shared<MackeyFunctor>();
    val->cat = cb;
    val->name = "lan(" + f->tag + "," + m->name + ")";
    for (int b = 0; b < nb; ++b) val->level.push_back(out.squeeze[b].canon);
    for (int b = 0; b < nb; ++b)
        for (int b2 = 0; b2 < nb; ++b2)
            for (const auto& t : cb->hom_basis(b, b2)) {
                ZMat rawmat(out.raw_gens[b2], out.raw_gens[b]);
                for (std::size_t k = 0; k < out.keys[b].size(); ++k) {
                    const auto& key = out.keys[b][k];
                    int cls = f->obj[key.a].sum.comps[key.c];
                    BurnsideHom comp = cb->compose(cb->basis_hom(t), cb->basis_hom(cb->hom_basis(cls, b)[key.beta]));
                    for (const auto& [sb, n] : comp.c) {
                        int k2 = find_key_lan(out.keys[b2], key.a, key.c, cb->basis_index(sb));
                        int gens = m->level[key.a].gens();
                        for (int g = 0; g < gens; ++g) rawmat.at(out.offsets[b2][k2] + g, out.offsets[b][k] + g) += n;
                    }
                }
                ZMat mat = out.squeeze[b2].to_canon.mat() * rawmat * out.squeeze[b].from_canon.mat();
                val->act.emplace(t, AbHom(val->level[b], val->level[b2], std::move(mat)));
            }
    out.value = val;
    return out;
}

MackeyMorphism lan_apply(const LanResult& from, const LanResult& to, const MackeyMorphism& g) {
    const Cat& cb = from.f->dst;
    MackeyMorphism out{from.value, to.value, {}};
    for (int b = 0; b < cb->n_classes(); ++b) {
        require(from.keys[b].size() == to.keys[b].size(), errc::internal, "lan_apply layout mismatch");
        ZMat rawmat(to.raw_gens[b], from.raw_gens[b]);
        for (std::size_t k = 0; k < from.keys[b].size(); ++k) {
            const ZMat& blk = g.comp[from.keys[b][k].a].mat();
            for (int r = 0; r < blk.rows(); ++r)
                for (int c = 0; c < blk.cols(); ++c) rawmat.at(to.offsets[b][k] + r, from.offsets[b][k] + c) = blk.at(r, c);
        }
        ZMat mat = to.squeeze[b].to_canon.mat() * rawmat * from.squeeze[b].from_canon.mat();
        out.comp.push_back(AbHom(from.value->level[b], to.value->level[b], std::move(mat)));
    }
    return out;
}

MackeyMorphism lan_unit(const LanResult& l, const MF& pre_value) {
    const Fun& f = l.f;
    const MF& m = l.source;
    MackeyMorphism out{m, pre_value, {}};
    for (int a = 0; a < f->src->n_classes(); ++a) {
        DirectSum ds = l.value->value(f->obj[a].sum);
        ZMat mat(ds.total.gens(), m->level[a].gens());
        for (int c = 0; c < f->obj[a].sum.size(); ++c) {
            int cls = f->obj[a].sum.comps[c];
            int idbeta = f->dst->basis_index(f->dst->identity_span(cls));
            int k = find_key_lan(l.keys[cls], a, c, idbeta);
            AbHom emb = l.gen_embed(cls, k);
            for (int r = 0; r < emb.mat().rows(); ++r)
                for (int col = 0; col < emb.mat().cols(); ++col) mat.at(ds.offset[c] + r, col) = emb.mat().at(r, col);
        }
        out.comp.push_back(AbHom(m->level[a], pre_value->level[a], std::move(mat)));
    }
    return out;
}

MackeyMorphism lan_counit(const LanResult& l, const MF& x) {
    // l.source must be precompose(l.f, x)
    const Fun& f = l.f;
    const Cat& cb = f->dst;
    MackeyMorphism out{l.value, x, {}};
    for (int b = 0; b < cb->n_classes(); ++b) {
        ZMat rawmat(x->level[b].gens(), l.raw_gens[b]);
        for (std::size_t k = 0; k < l.keys[b].size(); ++k) {
            const auto& key = l.keys[b][k];
            int cls = f->obj[key.a].sum.comps[key.c];
            const SpanBasisElt& beta = cb->hom_basis(cls, b)[key.beta];
            DirectSum ds = x->value(f->obj[key.a].sum);
            AbHom proj = ds.proj[key.c];
            AbHom block = x->act_basis(beta).compose(proj); // X(F a) -> X(comp_c) -> X(b)
            for (int r = 0; r < block.mat().rows(); ++r)
                for (int c = 0; c < block.mat().cols(); ++c)
                    rawmat.at(r, l.offsets[b][k] + c) = block.mat().at(r, c);
        }
        ZMat mat = rawmat * l.squeeze[b].from_canon.mat();
        out.comp.push_back(AbHom(l.value->level[b], x->level[b], std::move(mat)));
    }
    return out;
}

// ---- ran -------------------------------------------------------------------

AbHom RanResult::slot_project(int b, int key_index) const {
    const AbGrp& part = source->level[keys[b][key_index].a];
    AbHom emb = raw_incl[b].compose(squeeze[b].from_canon); // value -> ambient
    ZMat m(part.gens(), value->level[b].gens());
    int off = ambient[b].offset[key_index];
    for (int r = 0; r < part.gens(); ++r)
        for (int c = 0; c < m.cols(); ++c) m.at(r, c) = emb.mat().at(off + r, c);
    return AbHom(value->level[b], part, std::move(m));
}

RanResult ran(const Fun& f, const MF& m) {
    require(f->checked, errc::unverified_functor, "ran: functor not verified");
    require(m->cat == f->src, errc::parent_mismatch, "ran: source category mismatch");
    const Cat& ca = f->src;
    const Cat& cb = f->dst;
    RanResult out;
    out.f = f;
    out.source = m;
    const int na = ca->n_classes(), nb = cb->n_classes();
    out.keys.resize(nb);

    std::vector<AbGrp> rawker(nb, AbGrp::zero());
    for (int b = 0; b < nb; ++b) {
        auto& keys = out.keys[b];
        std::vector<AbGrp> slots;
        for (int a = 0; a < na; ++a)
            for (int c = 0; c < f->obj[a].sum.size(); ++c) {
                int nbasis = (int)cb->hom_basis(b, f->obj[a].sum.comps[c]).size();
                for (int gamma = 0; gamma < nbasis; ++gamma) {
                    keys.push_back(RanResult::GenKey{a, c, gamma});
                    slots.push_back(m->level[a]);
                }
            }
        out.ambient.push_back(direct_sum(slots));
        const DirectSum& amb = out.ambient[b];

        // difference map: for every span phi : a -> a2 and slot (a,c,gamma),
        // M(phi)(f(gamma)) - f(F(phi) . gamma)
        std::vector<AbGrp> targets;
        std::vector<ZMat> rows;
        for (int a = 0; a < na; ++a)
            for (int a2 = 0; a2 < na; ++a2)
                for (const auto& phi : ca->hom_basis(a, a2)) {
                    const SumHom& fphi = f->on_basis(phi);
                    const AbHom& mphi = m->act_basis(phi);
                    for (std::size_t k = 0; k < keys.size(); ++k) {
                        if (keys[k].a != a) continue;
                        ZMat row(m->level[a2].gens(), amb.total.gens());
                        for (int r = 0; r < mphi.mat().rows(); ++r)
                            for (int c = 0; c < mphi.mat().cols(); ++c)
                                row.at(r, amb.offset[k] + c) = mphi.mat().at(r, c);
                        int cls = f->obj[a].sum.comps[keys[k].c];
                        const SpanBasisElt& gamma = cb->hom_basis(b, cls)[keys[k].gamma];
                        for (int c2 = 0; c2 < f->obj[a2].sum.size(); ++c2) {
                            BurnsideHom comp = cb->compose(fphi.at(keys[k].c, c2), cb->basis_hom(gamma));
                            for (const auto& [sb, n] : comp.c) {
                                int k2 = find_key_ran(keys, a2, c2, cb->basis_index(sb));
                                for (int g = 0; g < m->level[a2].gens(); ++g)
                                    row.at(g, amb.offset[k2] + g) -= n;
                            }
                        }
                        targets.push_back(m->level[a2]);
                        rows.push_back(std::move(row));
                    }
                }
        DirectSum tsum = direct_sum(targets);
        ZMat big(tsum.total.gens(), amb.total.gens());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (int r = 0; r < rows[i].rows(); ++r)
                for (int c = 0; c < rows[i].cols(); ++c) big.at(tsum.offset[i] + r, c) = rows[i].at(r, c);
        AbHom dmap(amb.total, tsum.total, std::move(big));
        AbHom incl;
        rawker[b] = kernel_of(dmap, &incl);
        out.raw_incl.push_back(incl);
        out.squeeze.push_back(smith_decompose(rawker[b]));
    }

    auto val = std::make_shared<MackeyFunctor>();
    val->cat = cb;
    val->name = "ran(" + f->tag + "," + m->name + ")";
    for (int b = 0; b < nb; ++b) val->level.push_back(out.squeeze[b].canon);
    for (int b = 0; b < nb; ++b)
        for (int b2 = 0; b2 < nb; ++b2)
            for (const auto& t : cb->hom_basis(b, b2)) {
                // ambient slot map: output slot (a,c,gamma2) picks f(gamma2 . t)
                ZMat sig(out.ambient[b2].total.gens(), out.ambient[b].total.gens());
                for (std::size_t k2 = 0; k2 < out.keys[b2].size(); ++k2) {
                    const auto& key = out.keys[b2][k2];
                    int cls = f->obj[key.a].sum.comps[key.c];
                    BurnsideHom comp =
                        cb->compose(cb->basis_hom(cb->hom_basis(b2, cls)[key.gamma]), cb->basis_hom(t));
                    int gens = m->level[key.a].gens();
                    for (const auto& [sb, n] : comp.c) {
                        int k1 = find_key_ran(out.keys[b], key.a, key.c, cb->basis_index(sb));
                        for (int g = 0; g < gens; ++g)
                            sig.at(out.ambient[b2].offset[k2] + g, out.ambient[b].offset[k1] + g) += n;
                    }
                }
                AbHom ambmap(out.ambient[b].total, out.ambient[b2].total, std::move(sig));
                AbHom kermap = factor_through_mono(out.raw_incl[b2], ambmap.compose(out.raw_incl[b]));
                ZMat mat = out.squeeze[b2].to_canon.mat() * kermap.mat() * out.squeeze[b].from_canon.mat();
                val->act.emplace(t, AbHom(val->level[b], val->level[b2], std::move(mat)));
            }
    out.value = val;
    return out;
}

MackeyMorphism ran_apply(const RanResult& from, const RanResult& to, const MackeyMorphism& g) {
    const Cat& cb = from.f->dst;
    MackeyMorphism out{from.value, to.value, {}};
    for (int b = 0; b < cb->n_classes(); ++b) {
        require(from.keys[b].size() == to.keys[b].size(), errc::internal, "ran_apply layout mismatch");
        ZMat amb(to.ambient[b].total.gens(), from.ambient[b].total.gens());
        for (std::size_t k = 0; k < from.keys[b].size(); ++k) {
            const ZMat& blk = g.comp[from.keys[b][k].a].mat();
            for (int r = 0; r < blk.rows(); ++r)
                for (int c = 0; c < blk.cols(); ++c)
                    amb.at(to.ambient[b].offset[k] + r, from.ambient[b].offset[k] + c) = blk.at(r, c);
        }
        AbHom ambmap(from.ambient[b].total, to.ambient[b].total, std::move(amb));
        AbHom kermap = factor_through_mono(to.raw_incl[b], ambmap.compose(from.raw_incl[b]));
        ZMat mat = to.squeeze[b].to_canon.mat() * kermap.mat() * from.squeeze[b].from_canon.mat();
        out.comp.push_back(AbHom(from.value->level[b], to.value->level[b], std::move(mat)));
    }
    return out;
}

MackeyMorphism ran_unit(const RanResult& r, const MF& x) {
    // r.source must be precompose(r.f, x)
    const Fun& f = r.f;
    const Cat& cb = f->dst;
    MackeyMorphism out{x, r.value, {}};
    for (int b = 0; b < cb->n_classes(); ++b) {
        ZMat amb(r.ambient[b].total.gens(), x->level[b].gens());
        for (std::size_t k = 0; k < r.keys[b].size(); ++k) {
            const auto& key = r.keys[b][k];
            int cls = f->obj[key.a].sum.comps[key.c];
            const SpanBasisElt& gamma = cb->hom_basis(b, cls)[key.gamma];
            DirectSum ds = x->value(f->obj[key.a].sum);
            AbHom block = ds.incl[key.c].compose(x->act_basis(gamma)); // X(b) -> X(comp) -> X(F a)
            for (int rr = 0; rr < block.mat().rows(); ++rr)
                for (int c = 0; c < block.mat().cols(); ++c)
                    amb.at(r.ambient[b].offset[k] + rr, c) = block.mat().at(rr, c);
        }
        AbHom wedge(x->level[b], r.ambient[b].total, std::move(amb));
        AbHom into_ker = factor_through_mono(r.raw_incl[b], wedge);
        out.comp.push_back(r.squeeze[b].to_canon.compose(into_ker));
    }
    return out;
}

MackeyMorphism ran_counit(const RanResult& r, const MF& pre_value) {
    const Fun& f = r.f;
    const Cat& cb = f->dst;
    const MF& m = r.source;
    MackeyMorphism out{pre_value, m, {}};
    for (int a = 0; a < f->src->n_classes(); ++a) {
        DirectSum ds = r.value->value(f->obj[a].sum);
        ZMat mat(m->level[a].gens(), ds.total.gens());
        for (int c = 0; c < f->obj[a].sum.size(); ++c) {
            int cls = f->obj[a].sum.comps[c];
            int idgamma = cb->basis_index(cb->identity_span(cls));
            int k = find_key_ran(r.keys[cls], a, c, idgamma);
            AbHom pr = r.slot_project(cls, k);
            for (int rr = 0; rr < pr.mat().rows(); ++rr)
                for (int col = 0; col < pr.mat().cols(); ++col) mat.at(rr, ds.offset[c] + col) += pr.mat().at(rr, col);
        }
        out.comp.push_back(AbHom(pre_value->level[a], m->level[a], std::move(mat)));
    }
    return out;
}

// ---- composition iso -------------------------------------------------------

MackeyMorphism lan_compose_iso(const LanResult& inner, const LanResult& outer, const LanResult& direct) {
    const Fun& f1 = inner.f;
    const Fun& f2 = outer.f;
    require(outer.source == inner.value, errc::internal, "lan_compose_iso: outer must extend the inner value");
    require(direct.source == inner.source, errc::internal, "lan_compose_iso: direct source mismatch");
    const Cat& cc = f2->dst;
    const MF& m = inner.source;

    MackeyMorphism out{outer.value, direct.value, {}};
    for (int b = 0; b < cc->n_classes(); ++b) {
        // columns laid out like outer's raw generators, with each block of
        // inner.value.level[a1] expanded through inner's raw presentation
        ZMat full(direct.raw_gens[b], outer.raw_gens[b]);
        for (std::size_t k1 = 0; k1 < outer.keys[b].size(); ++k1) {
            const auto& key1 = outer.keys[b][k1];
            int a1 = key1.a;
            int t0 = f2->obj[a1].sum.comps[key1.c];
            const SpanBasisElt& beta = cc->hom_basis(t0, b)[key1.beta];
            // offsets of F2 images of the components of F1.obj[a0].sum inside
            // the composite object sum are cumulative
            const ZMat& from1 = inner.squeeze[a1].from_canon.mat();
            for (int col = 0; col < inner.value->level[a1].gens(); ++col) {
                for (std::size_t k0 = 0; k0 < inner.keys[a1].size(); ++k0) {
                    const auto& key0 = inner.keys[a1][k0];
                    int a0 = key0.a;
                    int gens0 = m->level[a0].gens();
                    // composite spans: beta . F2(beta0), distributed over the
                    // components of F2(F1 obj a0)
                    int cls0 = f1->obj[a0].sum.comps[key0.c];
                    const SpanBasisElt& beta0 = f1->dst->hom_basis(cls0, a1)[key0.beta];
                    SumHom f2beta0 = f2->on_hom(f1->dst->basis_hom(beta0)); // F2(cls0 sum) -> F2(a1) sum
                    int comp_off = 0;
                    for (int cprev = 0; cprev < key0.c; ++cprev)
                        comp_off += f2->obj[f1->obj[a0].sum.comps[cprev]].sum.size();
                    for (int cc2 = 0; cc2 < f2->obj[cls0].sum.size(); ++cc2) {
                        BurnsideHom comp = cc->compose(cc->basis_hom(beta), f2beta0.at(cc2, key1.c));
                        for (const auto& [sb, n] : comp.c) {
                            int kd = find_key_lan(direct.keys[b], a0, comp_off + cc2, cc->basis_index(sb));
                            for (int g = 0; g < gens0; ++g) {
                                const Int& w = from1.at(inner.offsets[a1][k0] + g, col);
                                if (w != 0)
                                    full.at(direct.offsets[b][kd] + g, outer.offsets[b][k1] + col) += w * n;
                            }
                        }
                    }
                }
            }
        }
        ZMat mat = direct.squeeze[b].to_canon.mat() * full * outer.squeeze[b].from_canon.mat();
        out.comp.push_back(AbHom(outer.value->level[b], direct.value->level[b], std::move(mat)));
    }
    return out;
}

// ---- restriction comparison -------------------------------------------------

namespace {

GSet realization_union(const Cat& cat, const ObjSum& sum, std::vector<int>* offsets) {
    const Group& g = cat->group();
    int total = 0;
    offsets->clear();
    for (int c : sum.comps) {
        offsets->push_back(total);
        total += cat->realization(c).set.n;
    }
    std::vector<std::vector<int>> act(g->order(), std::vector<int>(total));
    for (int e = 0; e < g->order(); ++e)
        for (int i = 0; i < sum.size(); ++i) {
            const GSet& r = cat->realization(sum.comps[i]).set;
            for (int p = 0; p < r.n; ++p) act[e][(*offsets)[i] + p] = (*offsets)[i] + r.act[e][p];
        }
    return make_gset(g, total, act);
}

} // namespace

ResCompare make_res_compare(const Fun& f, IndResPair e, IndResPair d) {
    ResCompare rc{f, std::move(e), std::move(d), {}};
    const Cat& ca = f->src;
    const Cat& cc = rc.e.res->dst;
    require(rc.d.res->src == ca && rc.e.res->src == f->dst, errc::parent_mismatch, "make_res_compare categories");
    require(rc.d.res->dst == cc, errc::parent_mismatch, "make_res_compare target category");

    for (int a = 0; a < ca->n_classes(); ++a) {
        const int npts = ca->realization(a).set.n;
        require(f->obj[a].nat_points == npts, errc::internal, "make_res_compare: F must be point preserving");
        require(rc.d.res->obj[a].nat_points == npts, errc::internal, "make_res_compare: res_D must be point preserving");

        // composite point map through res_E after F
        ObjSum comp_sum = rc.e.res->on_obj(f->obj[a].sum);
        std::vector<int> off(f->obj[a].sum.size() + 1, 0);
        for (int c = 0; c < f->obj[a].sum.size(); ++c)
            off[c + 1] = off[c] + rc.e.res->obj[f->obj[a].sum.comps[c]].sum.size();
        const ObjSum& d_sum = rc.d.res->obj[a].sum;

        std::vector<int> uoff;
        GSet w = realization_union(cc, d_sum, &uoff);
        std::vector<SumPoint> lleg(w.n), rleg(w.n);
        // invert the D point map
        std::vector<int> inv(w.n, -1);
        for (int p = 0; p < npts; ++p) {
            SumPoint sp = rc.d.res->obj[a].point_map[p];
            inv[uoff[sp.comp] + sp.pt] = p;
        }
        for (int q = 0; q < w.n; ++q) {
            require(inv[q] >= 0, errc::internal, "make_res_compare: D identification not bijective");
            int comp = 0;
            while (comp + 1 < (int)uoff.size() && uoff[comp + 1] <= q) ++comp;
            lleg[q] = SumPoint{comp, q - uoff[comp]};
            SumPoint s1 = f->obj[a].point_map[inv[q]];
            SumPoint s2 = rc.e.res->obj[f->obj[a].sum.comps[s1.comp]].point_map[s1.pt];
            rleg[q] = SumPoint{off[s1.comp] + s2.comp, s2.pt};
        }
        rc.omega.push_back(cc->expand_span(w, lleg, d_sum, rleg, comp_sum));
    }

    // omega is natural: omega_{a2} . res_D(s) = (res_E F)(s) . omega_a
    for (int a = 0; a < ca->n_classes(); ++a)
        for (int a2 = 0; a2 < ca->n_classes(); ++a2)
            for (const auto& s : ca->hom_basis(a, a2)) {
                SumHom lhs = cc->compose(rc.omega[a2], rc.d.res->on_basis(s));
                SumHom rhs = cc->compose(rc.e.res->on_sumhom(f->on_basis(s)), rc.omega[a]);
                require(lhs == rhs, errc::internal, "make_res_compare: identification is not natural");
            }
    return rc;
}

MackeyMorphism res_compare_map(const ResCompare& rc, const LanResult& l, const MF& pre_src, const MF& pre_dst) {
    const Cat& ca = rc.f->src;
    const Cat& cc = rc.e.res->dst;
    const MF& m = l.source;
    MackeyMorphism out{pre_src, pre_dst, {}};
    for (int c = 0; c < cc->n_classes(); ++c) {
        require(rc.e.ind->obj[c].sum.size() == 1 && rc.d.ind->obj[c].sum.size() == 1, errc::internal,
                "res_compare_map: induction images must be orbits");
        int t0 = rc.e.ind->obj[c].sum.comps[0];
        ZMat rawmat(pre_dst->level[c].gens(), l.raw_gens[t0]);
        for (std::size_t k = 0; k < l.keys[t0].size(); ++k) {
            const auto& key = l.keys[t0][k];
            int a = key.a;
            int cls = rc.f->obj[a].sum.comps[key.c];
            // single-entry sum hom F(a) -> ind_E(c) holding beta
            SumHom big = rc.f->dst->zero_sum_hom(rc.f->obj[a].sum, rc.e.ind->obj[c].sum);
            big.at(key.c, 0) = rc.f->dst->basis_hom(rc.f->dst->hom_basis(cls, t0)[key.beta]);
            // transpose along res_E -| ind_E, conjugate by omega, transpose back
            SumHom psi1 = cc->compose(rc.e.counit2[c], rc.e.res->on_sumhom(big));
            SumHom psi2 = cc->compose(psi1, rc.omega[a]);
            SumHom v = ca->compose(rc.d.ind->on_sumhom(psi2), rc.d.unit2[a]);
            AbHom block = m->act_on(v); // M(a) -> M(ind_D c)
            for (int r = 0; r < block.mat().rows(); ++r)
                for (int col = 0; col < block.mat().cols(); ++col)
                    rawmat.at(r, l.offsets[t0][k] + col) = block.mat().at(r, col);
        }
        ZMat mat = rawmat * l.squeeze[t0].from_canon.mat();
        out.comp.push_back(AbHom(pre_src->level[c], pre_dst->level[c], std::move(mat)));
    }
    return out;
}

// ---- generic Mackey-category functors and mates ------------------------------

MackFun mackfun_identity(const Cat& c) {
    return MackFun{c, c, "id", [](const MF& m) { return m; }, [](const MackeyMorphism& f) { return f; }};
}

MackFun mackfun_compose(const MackFun& g, const MackFun& f) {
    require(f.dst == g.src, errc::compose_error, "mackfun composition");
    return MackFun{f.src, g.dst, g.tag + "*" + f.tag, [g, f](const MF& m) { return g.ob(f.ob(m)); },
                   [g, f](const MackeyMorphism& h) { return g.mor(f.mor(h)); }};
}

MackFun mackfun_precompose(const Fun& f) {
    return MackFun{f->dst, f->src, "pre(" + f->tag + ")", [f](const MF& m) { return precompose(f, m); },
                   [f](const MackeyMorphism& g) {
                       return precompose_apply(f, precompose(f, g.src), precompose(f, g.dst), g);
                   }};
}

namespace {

struct LanCache {
    Fun f;
    std::map<const MackeyFunctor*, std::shared_ptr<LanResult>> memo;
    std::mutex mu;
    std::shared_ptr<LanResult> get(const MF& m) {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(m.get());
        if (it != memo.end()) return it->second;
        auto r = std::make_shared<LanResult>(lan(f, m));
        memo.emplace(m.get(), r);
        return r;
    }
};

struct RanCache {
    Fun f;
    std::map<const MackeyFunctor*, std::shared_ptr<RanResult>> memo;
    std::mutex mu;
    std::shared_ptr<RanResult> get(const MF& m) {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(m.get());
        if (it != memo.end()) return it->second;
        auto r = std::make_shared<RanResult>(ran(f, m));
        memo.emplace(m.get(), r);
        return r;
    }
};

} // namespace

MackFun mackfun_lan(const Fun& f) {
    auto cache = std::make_shared<LanCache>();
    cache->f = f;
    return MackFun{f->src, f->dst, "lan(" + f->tag + ")",
                   [cache](const MF& m) { return cache->get(m)->value; },
                   [cache](const MackeyMorphism& g) {
                       return lan_apply(*cache->get(g.src), *cache->get(g.dst), g);
                   }};
}

MackFun mackfun_ran(const Fun& f) {
    auto cache = std::make_shared<RanCache>();
    cache->f = f;
    return MackFun{f->src, f->dst, "ran(" + f->tag + ")",
                   [cache](const MF& m) { return cache->get(m)->value; },
                   [cache](const MackeyMorphism& g) {
                       return ran_apply(*cache->get(g.src), *cache->get(g.dst), g);
                   }};
}

MackAdj adj_lan_precompose(const Fun& f) {
    auto cache = std::make_shared<LanCache>();
    cache->f = f;
    MackAdj adj;
    adj.left = MackFun{f->src, f->dst, "lan(" + f->tag + ")",
                       [cache](const MF& m) { return cache->get(m)->value; },
                       [cache](const MackeyMorphism& g) {
                           return lan_apply(*cache->get(g.src), *cache->get(g.dst), g);
                       }};
    adj.right = mackfun_precompose(f);
    adj.unit = [cache, f](const MF& m) {
        auto l = cache->get(m);
        return lan_unit(*l, precompose(f, l->value));
    };
    adj.counit = [cache, f](const MF& x) {
        auto l = cache->get(precompose(f, x));
        return lan_counit(*l, x);
    };
    return adj;
}

MackAdj adj_precompose_ran(const Fun& f) {
    auto cache = std::make_shared<RanCache>();
    cache->f = f;
    MackAdj adj;
    adj.left = mackfun_precompose(f);
    adj.right = MackFun{f->src, f->dst, "ran(" + f->tag + ")",
                        [cache](const MF& m) { return cache->get(m)->value; },
                        [cache](const MackeyMorphism& g) {
                            return ran_apply(*cache->get(g.src), *cache->get(g.dst), g);
                        }};
    adj.unit = [cache, f](const MF& x) {
        auto r = cache->get(precompose(f, x));
        return ran_unit(*r, x);
    };
    adj.counit = [cache, f](const MF& m) {
        auto r = cache->get(m);
        return ran_counit(*r, precompose(f, r->value));
    };
    return adj;
}

bool check_triangles(const MackAdj& adj, const std::vector<MF>& left_samples,
                     const std::vector<MF>& right_samples, std::string* why) {
    auto explain = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    for (const auto& x : left_samples) {
        MF lx = adj.left.ob(x);
        MackeyMorphism t = mackey_compose(adj.counit(lx), adj.left.mor(adj.unit(x)));
        if (!mackey_morphism_equal(t, mackey_identity(lx))) return explain("triangle (eps L)(L eta) fails");
    }
    for (const auto& y : right_samples) {
        MF ry = adj.right.ob(y);
        MackeyMorphism t = mackey_compose(adj.right.mor(adj.counit(y)), adj.unit(ry));
        if (!mackey_morphism_equal(t, mackey_identity(ry))) return explain("triangle (R eps)(eta R) fails");
    }
    return true;
}

MackeyMorphism bc_left(const MateSquare& sq, const MackAdj& f_adj, const MackAdj& g_adj, const MF& x) {
    MF fx = f_adj.left.ob(x);
    MackeyMorphism inner = mackey_compose(sq.sigma.at(fx), sq.u.mor(f_adj.unit(x)));
    return mackey_compose(g_adj.counit(sq.v.ob(fx)), g_adj.left.mor(inner));
}

MackeyMorphism bc_right(const MateSquare& sq, const MackAdj& u_adj, const MackAdj& v_adj, const MF& y) {
    MF vy = v_adj.right.ob(y);
    MackeyMorphism inner = mackey_compose(sq.g.mor(v_adj.counit(y)), sq.sigma.at(vy));
    return mackey_compose(u_adj.right.mor(inner), u_adj.unit(sq.f.ob(vy)));
}

} // namespace mackey

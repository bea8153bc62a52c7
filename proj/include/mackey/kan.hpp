#pragma once

#include <functional>

#include "mackey/mackeyf.hpp"

namespace mackey {

// ---- precomposition -------------------------------------------------------

// (F^* M)(a) = M(F a), spans act through F. Requires a verified functor.
MF precompose(const Fun& f, const MF& m);
MackeyMorphism precompose_apply(const Fun& f, const MF& pre_src, const MF& pre_dst, const MackeyMorphism& g);

// ---- left Kan extension ---------------------------------------------------

// Lan_F M (b) is presented by generators beta (x) m for beta a span F a -> b
// and m a generator of M(a), modulo the coend relations. Levels are kept in
// Smith form; the raw generator layout is retained for building maps.
struct LanResult {
    Fun f;
    MF source;
    MF value;

    struct GenKey {
        int a;    // source class
        int c;    // component of F.obj[a].sum
        int beta; // index into hom_basis(comp, b)
    };
    std::vector<std::vector<GenKey>> keys;    // per target class b
    std::vector<std::vector<int>> offsets;    // per b, generator offset of each key block
    std::vector<int> raw_gens;                // per b
    std::vector<SmithDecomp> squeeze;         // per b, raw presentation -> level

    // Map out of the raw generator (a,c,beta) block into value(b):
    // from_canon column lookup. Returns value.level[b] <- M.level[a].
    AbHom gen_embed(int b, int key_index) const;
};

LanResult lan(const Fun& f, const MF& m);

MackeyMorphism lan_apply(const LanResult& from, const LanResult& to, const MackeyMorphism& g);
// unit: M -> F^*(Lan_F M); pre_value must be precompose(f, lan.value).
MackeyMorphism lan_unit(const LanResult& l, const MF& pre_value);
// counit: Lan_F(F^* X) -> X; l must be lan(f, precompose(f, x)).
MackeyMorphism lan_counit(const LanResult& l, const MF& x);

// ---- right Kan extension --------------------------------------------------

struct RanResult {
    Fun f;
    MF source;
    MF value;

    struct GenKey {
        int a;     // source class
        int c;     // component of F.obj[a].sum
        int gamma; // index into hom_basis(b, comp)
    };
    std::vector<std::vector<GenKey>> keys;
    std::vector<DirectSum> ambient;        // per b, sum of M.level[a] over keys
    std::vector<AbHom> raw_incl;           // per b, raw kernel -> ambient.total
    std::vector<SmithDecomp> squeeze;      // per b

    // Project value(b) to the (a,c,gamma) slot. Returns M.level[a] <- value.level[b].
    AbHom slot_project(int b, int key_index) const;
};

RanResult ran(const Fun& f, const MF& m);

MackeyMorphism ran_apply(const RanResult& from, const RanResult& to, const MackeyMorphism& g);
// unit: X -> Ran_F(F^* X); r must be ran(f, precompose(f, x)).
MackeyMorphism ran_unit(const RanResult& r, const MF& x);
// counit: F^*(Ran_F M) -> M; pre_value must be precompose(f, r.value).
MackeyMorphism ran_counit(const RanResult& r, const MF& pre_value);

// ---- composition iso ------------------------------------------------------

// Lan_{F2}(Lan_{F1} M) -> Lan_{F21} M where F21 = compose_functors(f2, f1)
// (or any functor with equal object images and span images).
MackeyMorphism lan_compose_iso(const LanResult& inner, const LanResult& outer, const LanResult& direct);

// ---- restriction comparison (the mate behind composition of a Kan
//      extension with a two-sided restriction) ------------------------------

// Data for comparing ind_E^* Lan_F with ind_D^*: an identification
// omega : res_D => res_E * F of functors B_A -> B_C, built from the
// recorded realizations and checked for naturality.
struct ResCompare {
    Fun f;        // F : B_A -> B_B
    IndResPair e; // between B_C and B_B
    IndResPair d; // between B_C and B_A
    std::vector<SumHom> omega; // per A-class
};

ResCompare make_res_compare(const Fun& f, IndResPair e, IndResPair d);

// The induced transformation ind_E^*(Lan_F M) -> ind_D^*(M), natural in M.
// pre_src must be precompose(e.ind, lan.value), pre_dst precompose(d.ind, m).
MackeyMorphism res_compare_map(const ResCompare& rc, const LanResult& l, const MF& pre_src, const MF& pre_dst);

// ---- generic functors on Mackey categories and Beck-Chevalley mates -------

struct MackFun {
    Cat src, dst;
    std::string tag;
    std::function<MF(const MF&)> ob;
    std::function<MackeyMorphism(const MackeyMorphism&)> mor;
};

struct MackNat {
    std::string tag;
    std::function<MackeyMorphism(const MF&)> at;
};

// L -| R between Mackey categories with explicit unit and counit.
struct MackAdj {
    MackFun left;  // A -> B
    MackFun right; // B -> A
    std::function<MackeyMorphism(const MF&)> unit;   // X -> R(L X)
    std::function<MackeyMorphism(const MF&)> counit; // L(R Y) -> Y
};

MackFun mackfun_identity(const Cat& c);
MackFun mackfun_compose(const MackFun& g, const MackFun& f);
MackFun mackfun_precompose(const Fun& f);
MackFun mackfun_lan(const Fun& f);
MackFun mackfun_ran(const Fun& f);
MackAdj adj_lan_precompose(const Fun& f);
MackAdj adj_precompose_ran(const Fun& f);

bool check_triangles(const MackAdj& adj, const std::vector<MF>& left_samples,
                     const std::vector<MF>& right_samples, std::string* why = nullptr);

// Square of restriction-type functors
//   A --u--> B        sigma : u(f(-)) => g(v(-))
//   ^        ^
//   f        g        (f, g vertical with adjoints as below)
//   C --v--> D
// bc_left: g_! u^* => v^* f_! evaluated at X in Mack-of-A, given left
// adjoints of f and g. bc_right: f^* v_* => u_* g^* at Y, given right
// adjoints of u and v.
struct MateSquare {
    MackFun u, f, v, g;
    MackNat sigma;
};

MackeyMorphism bc_left(const MateSquare& sq, const MackAdj& f_adj, const MackAdj& g_adj, const MF& x);
MackeyMorphism bc_right(const MateSquare& sq, const MackAdj& u_adj, const MackAdj& v_adj, const MF& y);

} // namespace mackey

#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "mackey/zmat.hpp"

namespace mackey {

// Finitely generated abelian group, presented as Z^n modulo the column
// lattice of a relation matrix (n rows, one column per relator).
// Presentations are kept as produced; normalization happens only inside
// iso tests and in smith_decompose.
class AbGrp {
public:
    AbGrp() : AbGrp(0) {}
    explicit AbGrp(int n_gens) : AbGrp(n_gens, ZMat(n_gens, 0)) {}
    AbGrp(int n_gens, ZMat relations);

    static AbGrp free_group(int rank) { return AbGrp(rank); }
    static AbGrp zero() { return AbGrp(0); }
    static AbGrp cyclic(long long n);

    int gens() const { return n_; }
    const ZMat& rels() const { return payload_->rels; }
    const Snf& rels_snf() const;

    bool is_trivial() const;
    int free_rank() const;
    std::vector<Int> torsion() const; // invariant factors >= 2
    std::string str() const;          // e.g. "Z^2 + Z/2 + Z/4"

    // True if v (a column) lies in the relation lattice.
    bool rel_member(const ZMat& v) const;

private:
    struct Payload {
        ZMat rels;
        mutable std::once_flag once;
        mutable std::unique_ptr<Snf> snf_cache;
    };
    int n_;
    std::shared_ptr<Payload> payload_;
};

class AbHom {
public:
    AbHom() = default;
    AbHom(AbGrp src, AbGrp dst, ZMat m);

    static AbHom identity(const AbGrp& a);
    static AbHom zero(const AbGrp& src, const AbGrp& dst);

    const AbGrp& src() const { return src_; }
    const AbGrp& dst() const { return dst_; }
    const ZMat& mat() const { return m_; }

    // Carries relations into relations. All constructions are supposed to
    // produce valid homs; this is the runtime check.
    bool is_valid() const;

    AbHom compose(const AbHom& inner) const; // *this after inner
    AbHom operator+(const AbHom& o) const;
    AbHom operator-(const AbHom& o) const;

    bool equals(const AbHom& o) const; // equality as maps, not of matrices
    bool is_zero_map() const;

private:
    AbGrp src_, dst_;
    ZMat m_;
};

struct HomInvariants {
    AbGrp kernel;   // with ker_incl into the source
    AbHom ker_incl;
    AbGrp cokernel; // with coker_proj from the target
    AbHom coker_proj;
    AbGrp image;
    bool is_mono = false, is_epi = false, is_iso = false;
};

HomInvariants hom_invariants(const AbHom& h);

AbGrp kernel_of(const AbHom& h, AbHom* incl = nullptr);
AbGrp cokernel_of(const AbHom& h, AbHom* proj = nullptr);
bool is_iso(const AbHom& h);

// Inverse of an isomorphism.
AbHom invert(const AbHom& h);

// h with incl * h = g, for a mono incl given by a lattice basis matrix.
AbHom factor_through_mono(const AbHom& incl, const AbHom& g);

// Canonical form Z^r + Z/d1 + ... with maps both ways (to*from = id, from*to = id).
struct SmithDecomp {
    AbGrp canon;
    AbHom to_canon, from_canon;
};
SmithDecomp smith_decompose(const AbGrp& a);

bool abgrp_iso(const AbGrp& a, const AbGrp& b); // same invariant factors

// Direct sums with the coordinate maps.
struct DirectSum {
    AbGrp total;
    std::vector<AbHom> incl, proj;
    std::vector<int> offset;
};
DirectSum direct_sum(const std::vector<AbGrp>& parts);

// Finite diagrams of abelian groups. Edges can repeat and need not generate
// a category; (co)limits only see the underlying graph.
struct AbDiagram {
    std::vector<AbGrp> obj;
    struct Edge {
        int src, dst;
        AbHom h;
    };
    std::vector<Edge> edges;
    void validate() const;
};

struct ColimitData {
    AbGrp value;
    std::vector<AbHom> cocone; // obj[i] -> value
};
ColimitData finite_colimit(const AbDiagram& d);
// Unique map value -> t induced by a competing cocone.
AbHom colimit_induced(const AbDiagram& d, const ColimitData& c, const AbGrp& t,
                      const std::vector<AbHom>& competing);

struct LimitData {
    AbGrp value;
    std::vector<AbHom> cone; // value -> obj[i]
    AbHom embed;             // value -> direct sum of objects (mono)
};
LimitData finite_limit(const AbDiagram& d);
AbHom limit_induced(const AbDiagram& d, const LimitData& l, const AbGrp& t,
                    const std::vector<AbHom>& competing);

} // namespace mackey

#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mackey/errors.hpp"

namespace mackey {

// Permutation of {0..n-1}.
struct Perm {
    std::vector<int> img;

    int degree() const { return (int)img.size(); }
    static Perm identity(int n);
    Perm after(const Perm& first) const; // this * first, first applied first
    Perm inverse() const;
    bool operator==(const Perm& o) const { return img == o.img; }
    bool operator<(const Perm& o) const { return img < o.img; }
    std::string cycles() const; // cycle notation, e.g. "(0 1)(2 3)"
};

Perm parse_cycles(const std::string& text, int degree);

class FinGroup;
using Group = std::shared_ptr<const FinGroup>;

// Finite group realized as permutations, closed at construction, with a
// multiplication table. Elements are indices into a sorted element list;
// index 0 is the identity. Immutable.
class FinGroup : public std::enable_shared_from_this<FinGroup> {
public:
    static constexpr int default_order_cap = 128;

    static Group make(const std::vector<Perm>& generators, const std::string& label = "",
                      int order_cap = default_order_cap);

    int order() const { return (int)elems_.size(); }
    int degree() const { return degree_; }
    const std::string& label() const { return label_; }
    const Perm& perm(int e) const { return elems_[e]; }
    const std::vector<int>& generators() const { return gens_; }

    int mul(int a, int b) const { return mul_[(std::size_t)a * elems_.size() + b]; } // a*b, b applied first
    int inv(int a) const { return inv_[a]; }
    int conj(int g, int x) const { return mul(mul(g, x), inv(g)); } // g x g^-1
    int elem_index(const Perm& p) const;

private:
    FinGroup() = default;
    int degree_ = 0;
    std::vector<Perm> elems_;
    std::vector<int> gens_;
    std::vector<int> mul_, inv_;
    std::string label_;
};

// Subgroup as a sorted list of element indices of the parent.
struct Subgroup {
    Group parent;
    std::vector<int> elems;

    int order() const { return (int)elems.size(); }
    bool contains(int e) const;
    bool same(const Subgroup& o) const { return elems == o.elems; }
    std::string canonical_label() const; // run-stable short hash
};

Subgroup trivial_subgroup(const Group& g);
Subgroup full_subgroup(const Group& g);
Subgroup subgroup_from_elements(const Group& g, std::vector<int> elems); // closure checked
Subgroup generated_subgroup(const Group& g, const std::vector<int>& gens);
Subgroup conjugate_subgroup(const Subgroup& h, int g);
bool is_normal(const Subgroup& n);
bool subgroup_subset(const Subgroup& a, const Subgroup& b);
Subgroup intersect(const Subgroup& a, const Subgroup& b);

// All subgroups, sorted by (order, element list).
std::vector<Subgroup> all_subgroups(const Group& g);

struct SubgroupClass {
    Subgroup rep;                      // lexicographically least member
    std::vector<Subgroup> members;
};
std::vector<SubgroupClass> subgroup_classes(const Group& g);

// Representatives of H\G/K, each the least element of its double coset.
std::vector<int> double_cosets(const Subgroup& h, const Subgroup& k);

// Group homomorphism given on every element.
struct GrpHom {
    Group src, dst;
    std::vector<int> img;

    int operator()(int e) const { return img[e]; }
    bool is_injective() const;
    bool is_surjective() const;
    Subgroup kernel() const;
    Subgroup image() const;
};

GrpHom identity_hom(const Group& g);
GrpHom compose(const GrpHom& outer, const GrpHom& inner);
// Extends generator images multiplicatively; fails if not a homomorphism.
GrpHom hom_from_gens(const Group& src, const Group& dst, const std::map<int, int>& gen_images);
GrpHom inclusion_hom(const Subgroup& h, const std::string& label = "");
bool hom_valid(const GrpHom& f);

struct QuotientData {
    Group q;
    GrpHom proj;                      // G -> Q
    std::vector<std::vector<int>> cosets; // coset elements per Q point (sorted)
};
QuotientData quotient(const Group& g, const Subgroup& n);

Subgroup preimage(const GrpHom& q, const Subgroup& kbar);
Subgroup image_subgroup(const GrpHom& f, const Subgroup& h);

struct FiberProductData {
    Group k;             // { (a,b) : q(a) = q(b) }
    GrpHom pr1, pr2;     // K -> G
    GrpHom diag;         // G -> K
};
FiberProductData fiber_product(const GrpHom& q, int order_cap = FinGroup::default_order_cap);

// Built-in catalog: C2 C3 C4 C2xC2 S3 C6 D8 Q8 C2xC4 A4.
std::vector<std::string> catalog_names();
Group catalog_group(const std::string& name);
// Group spec text: one generator per line in cycle notation; blank = trivial.
Group parse_group_text(const std::string& text, const std::string& label = "",
                       int order_cap = FinGroup::default_order_cap);

} // namespace mackey

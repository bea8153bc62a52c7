#include "mackey/grp.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace mackey {

Perm Perm::identity(int n) {
    Perm p;
    p.img.resize(n);
    for (int i = 0; i < n; ++i) p.img[i] = i;
    return p;
}

Perm Perm::after(const Perm& first) const {
    Perm r;
    r.img.resize(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) r.img[i] = img[first.img[i]];
    return r;
}

Perm Perm::inverse() const {
    Perm r;
    r.img.resize(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) r.img[img[i]] = (int)i;
    return r;
}

std::string Perm::cycles() const {
    std::ostringstream os;
    std::vector<bool> seen(img.size(), false);
    bool any = false;
    for (std::size_t i = 0; i < img.size(); ++i) {
        if (seen[i] || img[i] == (int)i) continue;
        any = true;
        os << '(';
        std::size_t j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            if (!first) os << ' ';
            os << j;
            first = false;
            j = img[j];
        }
        os << ')';
    }
    return any ? os.str() : "()";
}

Perm parse_cycles(const std::string& text, int degree) {
    std::vector<int> img(degree);
    for (int i = 0; i < degree; ++i) img[i] = i;
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos;
    };
    skip_ws();
    while (pos < text.size()) {
        require(text[pos] == '(', errc::parse_error, "expected '(' in cycle notation: " + text);
        ++pos;
        std::vector<int> cyc;
        while (true) {
            skip_ws();
            require(pos < text.size(), errc::parse_error, "unterminated cycle: " + text);
            if (text[pos] == ')') {
                ++pos;
                break;
            }
            require(std::isdigit((unsigned char)text[pos]), errc::parse_error, "expected point in cycle: " + text);
            int v = 0;
            while (pos < text.size() && std::isdigit((unsigned char)text[pos])) v = v * 10 + (text[pos++] - '0');
            require(v < degree, errc::parse_error, "cycle point exceeds degree");
            cyc.push_back(v);
        }
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            int from = cyc[i], to = cyc[(i + 1) % cyc.size()];
            require(img[from] == from, errc::parse_error, "point repeated in cycles: " + text);
            img[from] = to;
        }
        // mark mapped points as consumed so repeats are caught
        skip_ws();
    }
    Perm p;
    p.img = img;
    return p;
}

Group FinGroup::make(const std::vector<Perm>& generators, const std::string& label, int order_cap) {
    int degree = 1;
    for (const auto& g : generators) degree = std::max(degree, g.degree());
    auto pad = [&](const Perm& p) {
        Perm q = Perm::identity(degree);
        for (int i = 0; i < p.degree(); ++i) q.img[i] = p.img[i];
        return q;
    };

    std::set<Perm> closure;
    closure.insert(Perm::identity(degree));
    std::vector<Perm> work(closure.begin(), closure.end());
    std::vector<Perm> gens;
    for (const auto& g : generators) gens.push_back(pad(g));
    for (std::size_t i = 0; i < work.size(); ++i) {
        for (const auto& g : gens) {
            Perm p = g.after(work[i]);
            if (closure.insert(p).second) {
                require((int)closure.size() <= order_cap, errc::order_cap_exceeded,
                        "group order exceeds cap " + std::to_string(order_cap));
                work.push_back(p);
            }
        }
    }

    auto out = std::shared_ptr<FinGroup>(new FinGroup());
    out->degree_ = degree;
    out->elems_.assign(closure.begin(), closure.end());
    out->label_ = label.empty() ? "G" + std::to_string(out->elems_.size()) : label;
    const int n = (int)out->elems_.size();
    out->mul_.resize((std::size_t)n * n);
    out->inv_.resize(n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            Perm p = out->elems_[a].after(out->elems_[b]);
            out->mul_[(std::size_t)a * n + b] = out->elem_index(p);
        }
        out->inv_[a] = out->elem_index(out->elems_[a].inverse());
    }
    for (const auto& g : gens) out->gens_.push_back(out->elem_index(g));
    return out;
}

int FinGroup::elem_index(const Perm& p) const {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), p);
    require(it != elems_.end() && *it == p, errc::internal, "permutation not in group");
    return (int)(it - elems_.begin());
}

bool Subgroup::contains(int e) const { return std::binary_search(elems.begin(), elems.end(), e); }

std::string Subgroup::canonical_label() const {
    // FNV-1a over the sorted element indices, rendered base36
    unsigned long long h = 1469598103934665603ull;
    for (int e : elems) {
        h ^= (unsigned long long)(e + 1);
        h *= 1099511628211ull;
    }
    static const char* digits = "0123456789abcdefghijklmnopqrstuvwxyz";
    std::string tail;
    for (int i = 0; i < 6; ++i) {
        tail += digits[h % 36];
        h /= 36;
    }
    return "o" + std::to_string(elems.size()) + "_" + tail;
}

Subgroup trivial_subgroup(const Group& g) { return Subgroup{g, {0}}; }

Subgroup full_subgroup(const Group& g) {
    std::vector<int> all(g->order());
    for (int i = 0; i < g->order(); ++i) all[i] = i;
    return Subgroup{g, all};
}

Subgroup subgroup_from_elements(const Group& g, std::vector<int> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    Subgroup s{g, elems};
    require(s.contains(0), errc::internal, "subgroup must contain identity");
    for (int a : elems)
        for (int b : elems)
            require(s.contains(g->mul(a, b)), errc::internal, "subgroup not closed");
    return s;
}

Subgroup generated_subgroup(const Group& g, const std::vector<int>& gens) {
    std::set<int> closure{0};
    std::vector<int> work{0};
    for (std::size_t i = 0; i < work.size(); ++i)
        for (int x : gens) {
            int y = g->mul(work[i], x);
            if (closure.insert(y).second) work.push_back(y);
        }
    return Subgroup{g, std::vector<int>(closure.begin(), closure.end())};
}

Subgroup conjugate_subgroup(const Subgroup& h, int g) {
    std::vector<int> elems;
    for (int e : h.elems) elems.push_back(h.parent->conj(g, e));
    std::sort(elems.begin(), elems.end());
    return Subgroup{h.parent, elems};
}

bool is_normal(const Subgroup& n) {
    for (int g = 0; g < n.parent->order(); ++g)
        if (!conjugate_subgroup(n, g).same(n)) return false;
    return true;
}

bool subgroup_subset(const Subgroup& a, const Subgroup& b) {
    return std::includes(b.elems.begin(), b.elems.end(), a.elems.begin(), a.elems.end());
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
    require(a.parent == b.parent, errc::parent_mismatch, "intersect: different parents");
    std::vector<int> elems;
    std::set_intersection(a.elems.begin(), a.elems.end(), b.elems.begin(), b.elems.end(), std::back_inserter(elems));
    return Subgroup{a.parent, elems};
}

std::vector<Subgroup> all_subgroups(const Group& g) {
    std::set<std::vector<int>> found;
    found.insert({0});
    // seed with cyclic subgroups, then close under joins with single elements
    std::vector<std::vector<int>> work;
    for (int e = 1; e < g->order(); ++e) {
        auto s = generated_subgroup(g, {e});
        if (found.insert(s.elems).second) work.push_back(s.elems);
    }
    work.push_back({0});
    for (std::size_t i = 0; i < work.size(); ++i) {
        for (int e = 1; e < g->order(); ++e) {
            if (std::binary_search(work[i].begin(), work[i].end(), e)) continue;
            std::vector<int> gens = work[i];
            gens.push_back(e);
            auto s = generated_subgroup(g, gens);
            if (found.insert(s.elems).second) work.push_back(s.elems);
        }
    }
    std::vector<Subgroup> out;
    for (const auto& e : found) out.push_back(Subgroup{g, e});
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.elems < b.elems;
    });
    return out;
}

std::vector<SubgroupClass> subgroup_classes(const Group& g) {
    auto subs = all_subgroups(g);
    std::vector<bool> used(subs.size(), false);
    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t i = 0; i < subs.size(); ++i) index[subs[i].elems] = i;
    std::vector<SubgroupClass> out;
    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (used[i]) continue;
        SubgroupClass cls;
        std::set<std::vector<int>> orbit;
        for (int x = 0; x < g->order(); ++x) orbit.insert(conjugate_subgroup(subs[i], x).elems);
        for (const auto& e : orbit) {
            std::size_t j = index.at(e);
            used[j] = true;
            cls.members.push_back(subs[j]);
        }
        cls.rep = cls.members.front(); // members sorted, least is first
        out.push_back(std::move(cls));
    }
    return out;
}

std::vector<int> double_cosets(const Subgroup& h, const Subgroup& k) {
    require(h.parent == k.parent, errc::parent_mismatch, "double_cosets: different parents");
    const Group& g = h.parent;
    std::vector<bool> seen(g->order(), false);
    std::vector<int> reps;
    for (int e = 0; e < g->order(); ++e) {
        if (seen[e]) continue;
        reps.push_back(e);
        for (int a : h.elems)
            for (int b : k.elems) seen[g->mul(g->mul(a, e), b)] = true;
    }
    return reps;
}

bool GrpHom::is_injective() const {
    std::set<int> im(img.begin(), img.end());
    return (int)im.size() == src->order();
}

bool GrpHom::is_surjective() const {
    std::set<int> im(img.begin(), img.end());
    return (int)im.size() == dst->order();
}

Subgroup GrpHom::kernel() const {
    std::vector<int> elems;
    for (int e = 0; e < src->order(); ++e)
        if (img[e] == 0) elems.push_back(e);
    return Subgroup{src, elems};
}

Subgroup GrpHom::image() const {
    std::vector<int> elems(img.begin(), img.end());
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    return Subgroup{dst, elems};
}

GrpHom identity_hom(const Group& g) {
    GrpHom f{g, g, {}};
    f.img.resize(g->order());
    for (int i = 0; i < g->order(); ++i) f.img[i] = i;
    return f;
}

GrpHom compose(const GrpHom& outer, const GrpHom& inner) {
    require(inner.dst == outer.src, errc::parent_mismatch, "hom composition");
    GrpHom f{inner.src, outer.dst, {}};
    f.img.resize(inner.src->order());
    for (int i = 0; i < inner.src->order(); ++i) f.img[i] = outer.img[inner.img[i]];
    return f;
}

bool hom_valid(const GrpHom& f) {
    if ((int)f.img.size() != f.src->order()) return false;
    if (f.img[0] != 0) return false;
    for (int a = 0; a < f.src->order(); ++a)
        for (int b = 0; b < f.src->order(); ++b)
            if (f.img[f.src->mul(a, b)] != f.dst->mul(f.img[a], f.img[b])) return false;
    return true;
}

GrpHom hom_from_gens(const Group& src, const Group& dst, const std::map<int, int>& gen_images) {
    std::vector<int> img(src->order(), -1);
    img[0] = 0;
    std::vector<int> work{0};
    for (std::size_t i = 0; i < work.size(); ++i) {
        int a = work[i];
        for (const auto& [g, y] : gen_images) {
            int ag = src->mul(a, g);
            int val = dst->mul(img[a], y);
            if (img[ag] < 0) {
                img[ag] = val;
                work.push_back(ag);
            } else {
                require(img[ag] == val, errc::internal, "generator images do not define a homomorphism");
            }
        }
    }
    for (int v : img) require(v >= 0, errc::internal, "generator images do not generate the source");
    GrpHom f{src, dst, img};
    require(hom_valid(f), errc::internal, "generator images do not define a homomorphism");
    return f;
}

GrpHom inclusion_hom(const Subgroup& h, const std::string& label) {
    std::vector<Perm> ps;
    for (int e : h.elems) ps.push_back(h.parent->perm(e));
    Group sub = FinGroup::make(ps, label.empty() ? h.parent->label() + "." + h.canonical_label() : label);
    GrpHom f{sub, h.parent, {}};
    f.img.resize(sub->order());
    for (int i = 0; i < sub->order(); ++i) f.img[i] = h.parent->elem_index(sub->perm(i));
    return f;
}

QuotientData quotient(const Group& g, const Subgroup& n) {
    require(n.parent == g, errc::parent_mismatch, "quotient: subgroup of another group");
    require(is_normal(n), errc::not_normal, "quotient by non normal subgroup");
    // cosets ordered by least element
    std::vector<int> coset_of(g->order(), -1);
    std::vector<std::vector<int>> cosets;
    for (int e = 0; e < g->order(); ++e) {
        if (coset_of[e] >= 0) continue;
        std::vector<int> c;
        for (int x : n.elems) c.push_back(g->mul(e, x));
        std::sort(c.begin(), c.end());
        for (int y : c) coset_of[y] = (int)cosets.size();
        cosets.push_back(c);
    }
    const int m = (int)cosets.size();
    // permutation action of g on cosets
    auto act = [&](int e) {
        Perm p;
        p.img.resize(m);
        for (int c = 0; c < m; ++c) p.img[c] = coset_of[g->mul(e, cosets[c][0])];
        return p;
    };
    std::vector<Perm> qgens;
    for (int e = 0; e < g->order(); ++e) qgens.push_back(act(e));
    Group q = FinGroup::make(qgens, g->label() + "/" + n.canonical_label(), std::max(m, 1));
    GrpHom proj{g, q, {}};
    proj.img.resize(g->order());
    for (int e = 0; e < g->order(); ++e) proj.img[e] = q->elem_index(act(e));
    return QuotientData{q, proj, cosets};
}

Subgroup preimage(const GrpHom& q, const Subgroup& kbar) {
    require(kbar.parent == q.dst, errc::parent_mismatch, "preimage: subgroup of another group");
    std::vector<int> elems;
    for (int e = 0; e < q.src->order(); ++e)
        if (kbar.contains(q.img[e])) elems.push_back(e);
    return Subgroup{q.src, elems};
}

Subgroup image_subgroup(const GrpHom& f, const Subgroup& h) {
    require(h.parent == f.src, errc::parent_mismatch, "image_subgroup");
    std::vector<int> elems;
    for (int e : h.elems) elems.push_back(f.img[e]);
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    return Subgroup{f.dst, elems};
}

FiberProductData fiber_product(const GrpHom& q, int order_cap) {
    require(q.is_surjective(), errc::not_surjective, "fiber product needs a surjection");
    const Group& g = q.src;
    const int deg = g->degree();
    const int ker = g->order() / q.dst->order();
    require(g->order() * ker <= order_cap, errc::order_cap_exceeded, "fiber product exceeds order cap");

    // (a,b) acts on two disjoint copies of the permutation domain
    auto pair_perm = [&](int a, int b) {
        Perm p = Perm::identity(2 * deg);
        for (int i = 0; i < deg; ++i) {
            p.img[i] = g->perm(a).img[i];
            p.img[deg + i] = deg + g->perm(b).img[i];
        }
        return p;
    };
    std::vector<Perm> elems;
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < g->order(); ++a)
        for (int b = 0; b < g->order(); ++b)
            if (q.img[a] == q.img[b]) {
                elems.push_back(pair_perm(a, b));
                pairs.emplace_back(a, b);
            }
    Group k = FinGroup::make(elems, g->label() + "*" + g->label(), order_cap);
    require(k->order() == (int)pairs.size(), errc::internal, "fiber product closure mismatch");

    FiberProductData out;
    out.k = k;
    out.pr1 = GrpHom{k, g, std::vector<int>(k->order())};
    out.pr2 = GrpHom{k, g, std::vector<int>(k->order())};
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        int idx = k->elem_index(pair_perm(pairs[i].first, pairs[i].second));
        out.pr1.img[idx] = pairs[i].first;
        out.pr2.img[idx] = pairs[i].second;
    }
    out.diag = GrpHom{g, k, std::vector<int>(g->order())};
    for (int a = 0; a < g->order(); ++a) out.diag.img[a] = k->elem_index(pair_perm(a, a));
    return out;
}

std::vector<std::string> catalog_names() {
    return {"C2", "C3", "C4", "C2xC2", "S3", "C6", "D8", "Q8", "C2xC4", "A4"};
}

Group catalog_group(const std::string& name) {
    auto mk = [&](std::vector<std::string> cycs, int degree) {
        std::vector<Perm> gens;
        for (const auto& c : cycs) gens.push_back(parse_cycles(c, degree));
        return FinGroup::make(gens, name);
    };
    if (name == "C2") return mk({"(0 1)"}, 2);
    if (name == "C3") return mk({"(0 1 2)"}, 3);
    if (name == "C4") return mk({"(0 1 2 3)"}, 4);
    if (name == "C2xC2") return mk({"(0 1)", "(2 3)"}, 4);
    if (name == "S3") return mk({"(0 1 2)", "(0 1)"}, 3);
    if (name == "C6") return mk({"(0 1 2 3 4 5)"}, 6);
    if (name == "D8") return mk({"(0 1 2 3)", "(1 3)"}, 4);
    if (name == "Q8") return mk({"(0 1 2 3)(4 5 6 7)", "(0 4 2 6)(1 7 3 5)"}, 8);
    if (name == "C2xC4") return mk({"(0 1)", "(2 3 4 5)"}, 6);
    if (name == "A4") return mk({"(0 1 2)", "(1 2 3)"}, 4);
    fail(errc::parse_error, "unknown catalog group: " + name);
}

Group parse_group_text(const std::string& text, const std::string& label, int order_cap) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    std::string line;
    int degree = 1;
    while (std::getline(is, line)) {
        std::string trimmed;
        for (char c : line)
            if (!std::isspace((unsigned char)c)) trimmed += c;
        if (trimmed.empty() || trimmed[0] == '#') continue;
        lines.push_back(line);
        std::size_t pos = 0;
        while (pos < line.size()) {
            if (std::isdigit((unsigned char)line[pos])) {
                int v = 0;
                while (pos < line.size() && std::isdigit((unsigned char)line[pos])) v = v * 10 + (line[pos++] - '0');
                degree = std::max(degree, v + 1);
            } else {
                ++pos;
            }
        }
    }
    std::vector<Perm> gens;
    for (const auto& l : lines) gens.push_back(parse_cycles(l, degree));
    return FinGroup::make(gens, label, order_cap);
}

} // namespace mackey

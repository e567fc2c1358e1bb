#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "mumford/error.hpp"
#include "mumford/field.hpp"
#include "mumford/groupspec.hpp"
#include "mumford/projmat.hpp"

namespace mumford {

// Universal group element: up to four 64-bit words whose meaning is owned by
// the GroupRep that produced them.  Words are always canonical, so equality
// and hashing are plain word comparisons.
struct GElem {
    std::array<uint64_t, 4> w{};
    uint8_t n = 0;

    bool operator==(const GElem& o) const { return n == o.n && w == o.w; }
    bool operator!=(const GElem& o) const { return !(*this == o); }
    bool operator<(const GElem& o) const {
        if (n != o.n) return n < o.n;
        return w < o.w;
    }
};

struct GElemHash {
    size_t operator()(const GElem& e) const {
        uint64_t h = 1469598103934665603ull ^ e.n;
        for (uint8_t i = 0; i < e.n; ++i) {
            h ^= e.w[i];
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

inline GElem one_word(uint64_t v) {
    GElem e;
    e.n = 1;
    e.w[0] = v;
    return e;
}

class GroupRep {
  public:
    virtual ~GroupRep() = default;
    virtual GElem mul(const GElem& a, const GElem& b) const = 0;
    virtual GElem inv(const GElem& a) const = 0;
    virtual GElem id() const = 0;
    virtual std::string show(const GElem& a) const = 0;

    uint64_t elem_order(const GElem& a, uint64_t cap = 1 << 20) const {
        GElem v = a, e = id();
        uint64_t n = 1;
        while (!(v == e)) {
            v = mul(v, a);
            ++n;
            if (n > cap) throw check_failed("elem_order runaway");
        }
        return n;
    }
    GElem pow(const GElem& a, uint64_t e) const {
        GElem r = id(), b = a;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }
};

using RepPtr = std::shared_ptr<const GroupRep>;

// --- projective 2x2 matrices over a fixed field ---------------------------

class MatRep final : public GroupRep {
  public:
    explicit MatRep(FieldPtr f) : f_(std::move(f)) {}

    const Field& field() const { return *f_; }

    GElem pack(const ProjMat2& m) const { return one_word(m.pack()); }
    ProjMat2 unpack(const GElem& e) const {
        ProjMat2 m;
        m.field = f_.get();
        uint64_t v = e.w[0];
        for (int i = 0; i < 4; ++i) {
            m.e[i] = static_cast<Field::Elem>(v % f_->q());
            v /= f_->q();
        }
        return m;
    }

    GElem mul(const GElem& a, const GElem& b) const override {
        return pack(proj_mul(unpack(a), unpack(b)));
    }
    GElem inv(const GElem& a) const override { return pack(proj_inv(unpack(a))); }
    GElem id() const override { return pack(proj_identity<2>(*f_)); }
    std::string show(const GElem& a) const override { return unpack(a).str(); }

  private:
    FieldPtr f_;
};

// --- cyclic group Z/m ------------------------------------------------------

class CyclicRep final : public GroupRep {
  public:
    explicit CyclicRep(uint64_t m) : m_(m) {}
    GElem mul(const GElem& a, const GElem& b) const override {
        return one_word((a.w[0] + b.w[0]) % m_);
    }
    GElem inv(const GElem& a) const override { return one_word((m_ - a.w[0]) % m_); }
    GElem id() const override { return one_word(0); }
    std::string show(const GElem& a) const override { return "g^" + std::to_string(a.w[0]); }
    uint64_t m() const { return m_; }

  private:
    uint64_t m_;
};

// --- direct product of single-word reps -------------------------------------

class TupleRep final : public GroupRep {
  public:
    explicit TupleRep(std::vector<RepPtr> parts) : parts_(std::move(parts)) {
        if (parts_.size() > 4) throw invalid_input("TupleRep: at most 4 factors");
        for (const auto& p : parts_)
            if (p->id().n != 1) throw invalid_input("TupleRep: factors must be single-word");
    }

    GElem combine(const std::vector<GElem>& xs) const {
        GElem e;
        e.n = static_cast<uint8_t>(parts_.size());
        for (size_t i = 0; i < parts_.size(); ++i) e.w[i] = xs[i].w[0];
        return e;
    }
    GElem component(const GElem& e, size_t i) const { return one_word(e.w[i]); }
    size_t arity() const { return parts_.size(); }
    const RepPtr& part(size_t i) const { return parts_[i]; }

    GElem mul(const GElem& a, const GElem& b) const override {
        GElem e;
        e.n = a.n;
        for (size_t i = 0; i < parts_.size(); ++i)
            e.w[i] = parts_[i]->mul(one_word(a.w[i]), one_word(b.w[i])).w[0];
        return e;
    }
    GElem inv(const GElem& a) const override {
        GElem e;
        e.n = a.n;
        for (size_t i = 0; i < parts_.size(); ++i) e.w[i] = parts_[i]->inv(one_word(a.w[i])).w[0];
        return e;
    }
    GElem id() const override {
        GElem e;
        e.n = static_cast<uint8_t>(parts_.size());
        for (size_t i = 0; i < parts_.size(); ++i) e.w[i] = parts_[i]->id().w[0];
        return e;
    }
    std::string show(const GElem& a) const override {
        std::string s = "(";
        for (size_t i = 0; i < parts_.size(); ++i)
            s += (i ? ", " : "") + parts_[i]->show(one_word(a.w[i]));
        return s + ")";
    }

  private:
    std::vector<RepPtr> parts_;
};

// --- matrix part acting on a coordinate module F_q^L ------------------------
//
// Elements are pairs (g, v): word0 the packed matrix, word1 the packed vector.
// Multiplication (g, u)(h, v) = (gh, u^h + v) where ^h is the supplied right
// action of the matrix part on the module, given as coordinate permutation
// with scalar twists.  Action tables are supplied per matrix element.
class SemidirectRep final : public GroupRep {
  public:
    struct Action {
        // coordinate i of the input lands in coordinate to[i] scaled by sc[i]
        std::vector<uint8_t> to;
        std::vector<Field::Elem> sc;
    };

    SemidirectRep(std::shared_ptr<const MatRep> mat, FieldPtr modf, uint32_t len,
                  std::function<Action(const ProjMat2&)> act)
        : mat_(std::move(mat)), modf_(std::move(modf)), len_(len), make_action_(std::move(act)) {
        if (len_ * bits_per_coord() > 64) throw invalid_input("SemidirectRep: module too wide");
    }

    const MatRep& mat_rep() const { return *mat_; }
    const Field& module_field() const { return *modf_; }
    uint32_t module_len() const { return len_; }

    GElem make(const GElem& m, const std::vector<Field::Elem>& v) const {
        GElem e;
        e.n = 2;
        e.w[0] = m.w[0];
        e.w[1] = pack_vec(v);
        return e;
    }

    std::vector<Field::Elem> unpack_vec(uint64_t w) const {
        std::vector<Field::Elem> v(len_);
        for (uint32_t i = 0; i < len_; ++i) {
            v[i] = static_cast<Field::Elem>(w % modf_->q());
            w /= modf_->q();
        }
        return v;
    }
    uint64_t pack_vec(const std::vector<Field::Elem>& v) const {
        uint64_t w = 0;
        for (uint32_t i = len_; i-- > 0;) w = w * modf_->q() + v[i];
        return w;
    }

    GElem mul(const GElem& a, const GElem& b) const override {
        GElem m = mat_->mul(one_word(a.w[0]), one_word(b.w[0]));
        // u^h with h = matrix part of b
        const Action& act = action_of_inverse(b.w[0]);
        auto u = unpack_vec(a.w[1]);
        auto v = unpack_vec(b.w[1]);
        std::vector<Field::Elem> moved(len_, 0);
        for (uint32_t i = 0; i < len_; ++i)
            moved[act.to[i]] = modf_->mul(act.sc[i], u[i]);
        for (uint32_t i = 0; i < len_; ++i) moved[i] = modf_->add(moved[i], v[i]);
        GElem e;
        e.n = 2;
        e.w[0] = m.w[0];
        e.w[1] = pack_vec(moved);
        return e;
    }
    GElem inv(const GElem& a) const override {
        // (g,u)^{-1} = (g^{-1}, -(u^{g^{-1}}))
        GElem gi = mat_->inv(one_word(a.w[0]));
        const Action& act = action_of(a.w[0]);  // action of conjugation by g^{-1}
        auto u = unpack_vec(a.w[1]);
        std::vector<Field::Elem> moved(len_, 0);
        for (uint32_t i = 0; i < len_; ++i)
            moved[act.to[i]] = modf_->neg(modf_->mul(act.sc[i], u[i]));
        GElem e;
        e.n = 2;
        e.w[0] = gi.w[0];
        e.w[1] = pack_vec(moved);
        return e;
    }
    GElem id() const override {
        GElem e;
        e.n = 2;
        e.w[0] = mat_->id().w[0];
        e.w[1] = 0;
        return e;
    }
    std::string show(const GElem& a) const override {
        std::string s = mat_->show(one_word(a.w[0])) + " | [";
        auto v = unpack_vec(a.w[1]);
        for (uint32_t i = 0; i < len_; ++i) s += (i ? "," : "") + std::to_string(v[i]);
        return s + "]";
    }

  private:
    uint32_t bits_per_coord() const {
        uint32_t b = 1;
        while ((1ull << b) < modf_->q()) ++b;
        return b + 1;
    }
    // Action of conjugation x -> g^{-1} x g (the right action by g).
    const Action& action_of_inverse(uint64_t matw) const {
        auto it = cache_inv_.find(matw);
        if (it != cache_inv_.end()) return it->second;
        ProjMat2 g = mat_->unpack(one_word(matw));
        auto a = make_action_(proj_inv(g));
        return cache_inv_.emplace(matw, std::move(a)).first->second;
    }
    // Action of conjugation x -> g x g^{-1}.
    const Action& action_of(uint64_t matw) const {
        auto it = cache_fwd_.find(matw);
        if (it != cache_fwd_.end()) return it->second;
        ProjMat2 g = mat_->unpack(one_word(matw));
        auto a = make_action_(g);
        return cache_fwd_.emplace(matw, std::move(a)).first->second;
    }

    std::shared_ptr<const MatRep> mat_;
    FieldPtr modf_;
    uint32_t len_;
    std::function<Action(const ProjMat2&)> make_action_;
    mutable std::unordered_map<uint64_t, Action> cache_fwd_, cache_inv_;
};

// --- explicit finite group: rep + enumerated canonical elements -------------

class ConcreteGroup {
  public:
    ConcreteGroup() = default;

    // Breadth-first product saturation from generators.
    static ConcreteGroup closure(RepPtr rep, std::vector<GElem> gens,
                                 size_t budget = kDefaultElementBudget) {
        ConcreteGroup g;
        g.rep_ = std::move(rep);
        g.gens_ = std::move(gens);
        // inverses of generators keep Schreier words short and make the
        // sweep a genuine group closure even for non-symmetric gen sets
        std::vector<GElem> step = g.gens_;
        for (const auto& x : g.gens_) {
            GElem xi = g.rep_->inv(x);
            bool have = false;
            for (const auto& y : step) have = have || y == xi;
            if (!have) step.push_back(xi);
        }
        GElem e = g.rep_->id();
        g.elems_.push_back(e);
        g.index_[e] = 0;
        g.parent_.push_back(0);
        g.via_.push_back(UINT32_MAX);
        for (size_t head = 0; head < g.elems_.size(); ++head) {
            GElem cur = g.elems_[head];
            for (uint32_t j = 0; j < step.size(); ++j) {
                GElem nxt = g.rep_->mul(cur, step[j]);
                if (g.index_.emplace(nxt, static_cast<uint32_t>(g.elems_.size())).second) {
                    g.elems_.push_back(nxt);
                    g.parent_.push_back(static_cast<uint32_t>(head));
                    g.via_.push_back(j);
                    if (g.elems_.size() > budget)
                        throw budget_exceeded("group closure exceeds element budget");
                }
            }
        }
        g.step_ = std::move(step);
        return g;
    }

    uint64_t order() const { return elems_.size(); }
    const std::vector<GElem>& elements() const { return elems_; }
    const RepPtr& rep() const { return rep_; }
    const std::vector<GElem>& generators() const { return gens_; }

    bool contains(const GElem& x) const { return index_.count(x) > 0; }
    uint32_t index_of(const GElem& x) const {
        auto it = index_.find(x);
        if (it == index_.end()) throw invalid_input("element not in group");
        return it->second;
    }

    GElem named(const std::string& name) const {
        auto it = named_.find(name);
        if (it == named_.end()) throw invalid_input("no named element '" + name + "'");
        return it->second;
    }
    bool has_named(const std::string& name) const { return named_.count(name) > 0; }
    void set_named(const std::string& name, const GElem& x) { named_[name] = x; }
    const std::map<std::string, GElem>& named_all() const { return named_; }

    ConcreteGroup generated_subgroup(const std::vector<GElem>& gens,
                                     size_t budget = kDefaultElementBudget) const {
        return closure(rep_, gens, budget);
    }

    // Left cosets x*H of a subgroup given by its element list; returned as
    // the sorted list of canonical (minimal) representatives.
    std::vector<GElem> left_cosets(const std::vector<GElem>& sub) const {
        std::unordered_map<GElem, bool, GElemHash> seen;
        std::vector<GElem> reps;
        for (const auto& x : elems_) {
            GElem best = rep_->mul(x, sub[0]);
            for (size_t i = 1; i < sub.size(); ++i) {
                GElem cand = rep_->mul(x, sub[i]);
                if (cand < best) best = cand;
            }
            if (seen.emplace(best, true).second) reps.push_back(best);
        }
        std::sort(reps.begin(), reps.end());
        return reps;
    }

    // Extends generator images to the full element map along the Schreier
    // tree, then checks the homomorphism property on (element, step) pairs.
    // Returns false with a witness pair when the map is not a homomorphism.
    bool extend_hom(const GroupRep& target, const std::vector<GElem>& gen_images,
                    std::vector<GElem>& out,
                    std::pair<uint32_t, uint32_t>* witness = nullptr) const {
        if (gen_images.size() != gens_.size())
            throw invalid_input("extend_hom: one image per generator required");
        std::vector<GElem> step_images;
        step_images.reserve(step_.size());
        for (size_t j = 0; j < step_.size(); ++j) {
            if (j < gens_.size()) {
                step_images.push_back(gen_images[j]);
            } else {
                // the inverse generators appended by closure()
                GElem si = step_[j];
                bool found = false;
                for (size_t k = 0; k < gens_.size() && !found; ++k)
                    if (rep_->inv(gens_[k]) == si) {
                        step_images.push_back(target.inv(gen_images[k]));
                        found = true;
                    }
                if (!found) throw check_failed("extend_hom: unmatched closure step");
            }
        }
        out.assign(elems_.size(), target.id());
        for (size_t i = 1; i < elems_.size(); ++i)
            out[i] = target.mul(out[parent_[i]], step_images[via_[i]]);
        for (uint32_t i = 0; i < elems_.size(); ++i)
            for (uint32_t j = 0; j < step_.size(); ++j) {
                GElem prod = rep_->mul(elems_[i], step_[j]);
                if (!(out[index_of(prod)] == target.mul(out[i], step_images[j]))) {
                    if (witness) *witness = {i, j};
                    return false;
                }
            }
        return true;
    }

    // Full pairwise homomorphism check for an element map (used by the
    // certificate path; quadratic but vertex groups are small).
    bool is_hom(const GroupRep& target, const std::vector<GElem>& map,
                std::pair<uint32_t, uint32_t>* witness = nullptr) const {
        for (uint32_t i = 0; i < elems_.size(); ++i)
            for (uint32_t j = 0; j < elems_.size(); ++j) {
                GElem prod = rep_->mul(elems_[i], elems_[j]);
                if (!(map[index_of(prod)] == target.mul(map[i], map[j]))) {
                    if (witness) *witness = {i, j};
                    return false;
                }
            }
        return true;
    }

    static bool is_injective(const std::vector<GElem>& map) {
        std::unordered_map<GElem, bool, GElemHash> seen;
        for (const auto& x : map)
            if (!seen.emplace(x, true).second) return false;
        return true;
    }

  private:
    RepPtr rep_;
    std::vector<GElem> elems_;
    std::unordered_map<GElem, uint32_t, GElemHash> index_;
    std::vector<uint32_t> parent_, via_;
    std::vector<GElem> gens_, step_;
    std::map<std::string, GElem> named_;
};

}  // namespace mumford

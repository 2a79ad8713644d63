#include "induct/constraint.hpp"

#include <algorithm>
#include <sstream>

namespace induct {

Atom applyToAtom(const Signature& sig, const Atom& a, const Substitution& s) {
    Atom out = a;
    if (out.lhs) out.lhs = s.apply(sig, out.lhs);
    if (out.rhs) out.rhs = s.apply(sig, out.rhs);
    if (out.patternInstance) out.patternInstance = s.apply(sig, out.patternInstance);
    return out;
}

Atom negateAtomBasic(const Atom& a) {
    Atom out = a;
    switch (a.kind) {
        case AtomKind::Eq: out.kind = AtomKind::Neq; break;
        case AtomKind::Neq: out.kind = AtomKind::Eq; break;
        case AtomKind::ShapeEq: out.kind = AtomKind::ShapeNeq; break;
        case AtomKind::ShapeNeq: out.kind = AtomKind::ShapeEq; break;
        case AtomKind::Member: out.kind = AtomKind::NotMember; break;
        case AtomKind::NotMember: out.kind = AtomKind::Member; break;
        case AtomKind::Lt: throw SpecError("negateAtomBasic on Lt");
    }
    return out;
}

Constraint Constraint::atom(Atom a) {
    Constraint c;
    c.op_ = Op::Leaf;
    c.leaf_ = std::move(a);
    return c;
}

Constraint Constraint::conj(std::vector<Constraint> kids) {
    std::vector<Constraint> flat;
    for (auto& k : kids) {
        if (k.isTrue()) continue;
        if (k.isFalse()) return bottom();
        if (k.op_ == Op::And) {
            for (auto& kk : k.kids_) flat.push_back(kk);
        } else {
            flat.push_back(k);
        }
    }
    if (flat.empty()) return top();
    if (flat.size() == 1) return flat[0];
    Constraint c;
    c.op_ = Op::And;
    c.kids_ = std::move(flat);
    return c;
}

Constraint Constraint::disj(std::vector<Constraint> kids) {
    std::vector<Constraint> flat;
    for (auto& k : kids) {
        if (k.isFalse()) continue;
        if (k.isTrue()) return top();
        if (k.op_ == Op::Or) {
            for (auto& kk : k.kids_) flat.push_back(kk);
        } else {
            flat.push_back(k);
        }
    }
    if (flat.empty()) return bottom();
    if (flat.size() == 1) return flat[0];
    Constraint c;
    c.op_ = Op::Or;
    c.kids_ = std::move(flat);
    return c;
}

Constraint Constraint::neg(Constraint c) {
    if (c.isTrue()) return bottom();
    if (c.isFalse()) return top();
    Constraint out;
    out.op_ = Op::Not;
    out.kids_.push_back(std::move(c));
    return out;
}

Constraint Constraint::apply(const Signature& sig, const Substitution& s) const {
    switch (op_) {
        case Op::True:
        case Op::False: return *this;
        case Op::Leaf: return atom(applyToAtom(sig, leaf_, s));
        case Op::Not: return neg(kids_[0].apply(sig, s));
        case Op::And: {
            std::vector<Constraint> ks;
            for (auto& k : kids_) ks.push_back(k.apply(sig, s));
            return conj(std::move(ks));
        }
        case Op::Or: {
            std::vector<Constraint> ks;
            for (auto& k : kids_) ks.push_back(k.apply(sig, s));
            return disj(std::move(ks));
        }
    }
    return top();
}

void Constraint::collectAtoms(std::vector<Atom>& out) const {
    if (op_ == Op::Leaf) out.push_back(leaf_);
    for (auto& k : kids_) k.collectAtoms(out);
}

void Constraint::collectVars(std::vector<VarId>& out) const {
    std::vector<Atom> atoms;
    collectAtoms(atoms);
    for (auto& a : atoms) {
        if (a.lhs) induct::collectVars(a.lhs, out);
        if (a.rhs) induct::collectVars(a.rhs, out);
        if (a.patternInstance) induct::collectVars(a.patternInstance, out);
    }
}

std::vector<Constraint> Constraint::conjuncts() const {
    if (op_ == Op::And) return kids_;
    if (op_ == Op::True) return {};
    return {*this};
}

Constraint Constraint::fromConjunction(const std::vector<Atom>& atoms) {
    std::vector<Constraint> ks;
    ks.reserve(atoms.size());
    for (auto& a : atoms) ks.push_back(atom(a));
    return conj(std::move(ks));
}

int ConstrainedClause::depth() const {
    int d = 0;
    for (auto& l : literals) {
        d = std::max(d, l.lhs->depth);
        d = std::max(d, l.rhs->depth);
    }
    return d;
}

ConstrainedClause applyToClause(const Signature& sig, const ConstrainedClause& c,
                                const Substitution& s) {
    ConstrainedClause out;
    out.literals.reserve(c.literals.size());
    for (auto& l : c.literals)
        out.literals.push_back(Literal{l.kind, s.apply(sig, l.lhs), s.apply(sig, l.rhs)});
    out.constraint = c.constraint.apply(sig, s);
    return out;
}

void clauseVars(const ConstrainedClause& c, std::vector<VarId>& out) {
    for (auto& l : c.literals) {
        collectVars(l.lhs, out);
        collectVars(l.rhs, out);
    }
}

// ---------------------------------------------------------------------------
// DNF normalization

namespace {

struct NnfLit {
    Atom atom;
};

// Produces DNF of the formula; `negated` tracks NNF polarity.
std::vector<std::vector<Atom>> dnfRec(const Signature& sig, const Constraint& c,
                                      bool negated, const MemberNegator* negator);

std::vector<std::vector<Atom>> dnfAtom(const Signature& sig, const Atom& a, bool negated,
                                       const MemberNegator* negator) {
    if (!negated) return {{a}};
    switch (a.kind) {
        case AtomKind::Lt:
            // Totality of the ground ordering: not(s < t) = t < s or s = t.
            return {{Atom::lt(a.rhs, a.lhs)}, {Atom::eq(a.lhs, a.rhs)}};
        case AtomKind::Member: {
            Atom nm = negateAtomBasic(a);
            if (negator) {
                std::vector<std::vector<Atom>> out;
                for (auto& alt : negator->alternatives(nm)) out.push_back({alt});
                return out;
            }
            return {{nm}};
        }
        default:
            return {{negateAtomBasic(a)}};
    }
}

std::vector<std::vector<Atom>> dnfProduct(std::vector<std::vector<Atom>> a,
                                          const std::vector<std::vector<Atom>>& b) {
    std::vector<std::vector<Atom>> out;
    for (auto& x : a)
        for (auto& y : b) {
            std::vector<Atom> branch = x;
            branch.insert(branch.end(), y.begin(), y.end());
            out.push_back(std::move(branch));
        }
    return out;
}

int atomOrderRank(const Atom& a) {
    return a.kind == AtomKind::Member ? 0 : 1;
}

std::vector<std::vector<Atom>> dnfRec(const Signature& sig, const Constraint& c,
                                      bool negated, const MemberNegator* negator) {
    using Op = Constraint::Op;
    switch (c.op()) {
        case Op::True: return negated ? std::vector<std::vector<Atom>>{} // false
                                      : std::vector<std::vector<Atom>>{{}};
        case Op::False: return negated ? std::vector<std::vector<Atom>>{{}}
                                       : std::vector<std::vector<Atom>>{};
        case Op::Leaf: return dnfAtom(sig, c.leaf(), negated, negator);
        case Op::Not: return dnfRec(sig, c.kids()[0], !negated, negator);
        case Op::And: {
            if (!negated) {
                std::vector<std::vector<Atom>> acc{{}};
                for (auto& k : c.kids())
                    acc = dnfProduct(std::move(acc), dnfRec(sig, k, false, negator));
                return acc;
            }
            // Ordered complement, Member conjuncts first so that pattern
            // variables stay bound in the branches that negate later atoms.
            std::vector<Constraint> kids = c.kids();
            std::stable_sort(kids.begin(), kids.end(),
                             [](const Constraint& x, const Constraint& y) {
                                 auto rank = [](const Constraint& k) {
                                     return k.op() == Op::Leaf ? atomOrderRank(k.leaf()) : 2;
                                 };
                                 return rank(x) < rank(y);
                             });
            std::vector<std::vector<Atom>> out;
            for (size_t i = 0; i < kids.size(); ++i) {
                std::vector<std::vector<Atom>> prefix{{}};
                for (size_t j = 0; j < i; ++j)
                    prefix = dnfProduct(std::move(prefix), dnfRec(sig, kids[j], false, negator));
                auto negI = dnfRec(sig, kids[i], true, negator);
                for (auto& br : dnfProduct(std::move(prefix), negI))
                    out.push_back(std::move(br));
            }
            return out;
        }
        case Op::Or: {
            if (!negated) {
                std::vector<std::vector<Atom>> out;
                for (auto& k : c.kids())
                    for (auto& br : dnfRec(sig, k, false, negator))
                        out.push_back(std::move(br));
                return out;
            }
            std::vector<std::vector<Atom>> acc{{}};
            for (auto& k : c.kids())
                acc = dnfProduct(std::move(acc), dnfRec(sig, k, true, negator));
            return acc;
        }
    }
    return {};
}

} // namespace

std::vector<std::vector<Atom>> normalizeDnf(const Signature& sig, const Constraint& c,
                                            const MemberNegator* negator) {
    auto branches = dnfRec(sig, c, false, negator);
    std::vector<std::vector<Atom>> out;
    for (auto& br : branches) {
        std::vector<Atom> atoms = br;
        if (simplifyConjunction(sig, atoms)) out.push_back(std::move(atoms));
    }
    return out;
}

std::string atomString(const Signature& sig, const Atom& a) {
    std::ostringstream os;
    switch (a.kind) {
        case AtomKind::Eq: os << printTerm(sig, a.lhs) << " =~ " << printTerm(sig, a.rhs); break;
        case AtomKind::Neq: os << printTerm(sig, a.lhs) << " !~ " << printTerm(sig, a.rhs); break;
        case AtomKind::Lt: os << printTerm(sig, a.lhs) << " < " << printTerm(sig, a.rhs); break;
        case AtomKind::ShapeEq: os << printTerm(sig, a.lhs) << " ~ " << printTerm(sig, a.rhs); break;
        case AtomKind::ShapeNeq: os << "!(" << printTerm(sig, a.lhs) << " ~ " << printTerm(sig, a.rhs) << ")"; break;
        case AtomKind::Member:
            os << printTerm(sig, a.lhs) << " : <" << (a.patternInstance ? printTerm(sig, a.patternInstance) : std::string("?")) << ">";
            break;
        case AtomKind::NotMember:
            os << printTerm(sig, a.lhs) << " !: <" << (a.patternInstance ? printTerm(sig, a.patternInstance) : std::string("?")) << ">";
            break;
    }
    return os.str();
}

std::string constraintString(const Signature& sig, const Constraint& c) {
    using Op = Constraint::Op;
    switch (c.op()) {
        case Op::True: return "true";
        case Op::False: return "false";
        case Op::Leaf: return atomString(sig, c.leaf());
        case Op::Not: return "!(" + constraintString(sig, c.kids()[0]) + ")";
        case Op::And: {
            std::string s;
            for (size_t i = 0; i < c.kids().size(); ++i) {
                if (i) s += ", ";
                s += constraintString(sig, c.kids()[i]);
            }
            return s;
        }
        case Op::Or: {
            std::string s = "(";
            for (size_t i = 0; i < c.kids().size(); ++i) {
                if (i) s += " \\/ ";
                s += constraintString(sig, c.kids()[i]);
            }
            return s + ")";
        }
    }
    return "";
}

static bool sameAtom(const Atom& a, const Atom& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == AtomKind::Member || a.kind == AtomKind::NotMember)
        return a.grammarId == b.grammarId && a.nonTerminal == b.nonTerminal &&
               sameTerm(a.lhs, b.lhs) &&
               ((a.patternInstance && b.patternInstance)
                    ? sameTerm(a.patternInstance, b.patternInstance)
                    : a.patternInstance == b.patternInstance);
    bool direct = sameTerm(a.lhs, b.lhs) && sameTerm(a.rhs, b.rhs);
    if (direct) return true;
    bool symmetric = a.kind == AtomKind::Eq || a.kind == AtomKind::Neq ||
                     a.kind == AtomKind::ShapeEq || a.kind == AtomKind::ShapeNeq;
    return symmetric && sameTerm(a.lhs, b.rhs) && sameTerm(a.rhs, b.lhs);
}

bool simplifyConjunction(const Signature& sig, std::vector<Atom>& atoms) {
    (void)sig;
    std::vector<Atom> out;
    for (auto& a : atoms) {
        if ((a.kind == AtomKind::Eq || a.kind == AtomKind::ShapeEq) && sameTerm(a.lhs, a.rhs)) {
            if (a.kind == AtomKind::Eq) continue;  // s =~ s is trivially true
            // s ~ s still asserts well-formedness; keep it.
        }
        if ((a.kind == AtomKind::Neq || a.kind == AtomKind::Lt) && sameTerm(a.lhs, a.rhs))
            return false;
        bool dup = false;
        for (auto& b : out)
            if (sameAtom(a, b)) { dup = true; break; }
        if (!dup) out.push_back(a);
    }
    // A disequality implied by a strict order atom on the same pair is noise.
    std::vector<Atom> cleaned;
    for (auto& a : out) {
        if (a.kind == AtomKind::Neq) {
            bool implied = false;
            for (auto& b : out)
                if (b.kind == AtomKind::Lt &&
                    ((sameTerm(a.lhs, b.lhs) && sameTerm(a.rhs, b.rhs)) ||
                     (sameTerm(a.lhs, b.rhs) && sameTerm(a.rhs, b.lhs))))
                    implied = true;
            if (implied) continue;
        }
        cleaned.push_back(a);
    }
    atoms = std::move(cleaned);
    return true;
}

std::optional<int> shapeDepth(const Signature& sig, const Term& t) {
    if (t->isVar) return std::nullopt;
    const FunctionSymbol& fs = sig.symbol(t->symbol);
    SortId self = fs.resultSort;
    std::vector<int> sameSortDepths;
    bool hasSameSortArg = false;
    for (size_t i = 0; i < t->args.size(); ++i) {
        if (fs.argSorts[i] == self) {
            hasSameSortArg = true;
            auto d = shapeDepth(sig, t->args[i]);
            if (!d) return std::nullopt;
            sameSortDepths.push_back(*d);
        }
    }
    if (!hasSameSortArg) {
        if (fs.arity() == 0) return std::nullopt;  // bottom-like constant: not well formed
        return 0;                                   // leaf constructor
    }
    for (size_t i = 1; i < sameSortDepths.size(); ++i)
        if (sameSortDepths[i] != sameSortDepths[0]) return std::nullopt;
    return sameSortDepths[0] + 1;
}

bool isTautology(const Signature& sig, const ConstrainedClause& cl) {
    for (auto& l : cl.literals)
        if (l.isPositive() && sameTerm(l.lhs, l.rhs)) return true;

    std::vector<Atom> atoms;
    cl.constraint.collectAtoms(atoms);
    // The constraint must be a pure conjunction of equational atoms.
    if (cl.constraint.op() == Constraint::Op::Or || cl.constraint.op() == Constraint::Op::Not)
        return false;
    for (auto& c : cl.constraint.conjuncts())
        if (c.op() != Constraint::Op::Leaf) return false;
    for (auto& a : atoms)
        if (a.kind != AtomKind::Eq) return false;
    if (atoms.empty()) return false;

    Substitution sol;
    for (auto& a : atoms) {
        auto u = unify(sig, sol.apply(sig, a.lhs), sol.apply(sig, a.rhs));
        if (!u) return false;
        sol = sol.compose(sig, *u);
    }
    for (auto& l : cl.literals)
        if (l.isPositive() && sameTerm(sol.apply(sig, l.lhs), sol.apply(sig, l.rhs)))
            return true;
    return false;
}

// ---------------------------------------------------------------------------
// Order assumptions

bool OrderAssumptions::isLess(VarId a, VarId b) const {
    for (auto& [x, y] : less)
        if (x == a && y == b) return true;
    return false;
}

bool OrderAssumptions::isEqual(VarId a, VarId b) const {
    if (a == b) return true;
    for (auto& [x, y] : equal)
        if ((x == a && y == b) || (x == b && y == a)) return true;
    return false;
}

namespace {

struct BranchFacts {
    std::set<std::pair<VarId, VarId>> less;
    std::set<std::pair<VarId, VarId>> equal;  // stored with first < second
};

std::optional<BranchFacts> branchFacts(const Signature& sig, const std::vector<Atom>& branch) {
    // Merge equality classes of variables.
    std::map<VarId, VarId> parent;
    std::function<VarId(VarId)> find = [&](VarId v) -> VarId {
        auto it = parent.find(v);
        if (it == parent.end() || it->second == v) return v;
        VarId r = find(it->second);
        parent[v] = r;
        return r;
    };
    auto unite = [&](VarId a, VarId b) {
        VarId ra = find(a), rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    };
    std::vector<VarId> vars;
    for (auto& a : branch) {
        if (a.kind == AtomKind::Eq && a.lhs->isVar && a.rhs->isVar)
            unite(a.lhs->var, a.rhs->var);
        if (a.lhs) collectVars(a.lhs, vars);
        if (a.rhs) collectVars(a.rhs, vars);
    }
    std::set<std::pair<VarId, VarId>> lessRepr;
    for (auto& a : branch)
        if (a.kind == AtomKind::Lt && a.lhs->isVar && a.rhs->isVar)
            lessRepr.insert({find(a.lhs->var), find(a.rhs->var)});
    // Transitive closure over representatives.
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::pair<VarId, VarId>> add;
        for (auto& [a, b] : lessRepr)
            for (auto& [c, d] : lessRepr)
                if (b == c && !lessRepr.count({a, d})) add.push_back({a, d});
        for (auto& p : add) { lessRepr.insert(p); changed = true; }
    }
    for (auto& [a, b] : lessRepr)
        if (a == b) return std::nullopt;  // contradictory branch: ignore it

    BranchFacts out;
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    for (VarId a : vars)
        for (VarId b : vars) {
            if (a >= b) continue;
            if (find(a) == find(b)) out.equal.insert({a, b});
        }
    for (VarId a : vars)
        for (VarId b : vars) {
            if (a == b) continue;
            if (lessRepr.count({find(a), find(b)})) out.less.insert({a, b});
        }
    (void)sig;
    return out;
}

} // namespace

OrderAssumptions assumptionsFrom(const Signature& sig, const Constraint& c) {
    OrderAssumptions out;
    auto dnf = normalizeDnf(sig, c);
    std::optional<BranchFacts> acc;
    for (auto& branch : dnf) {
        auto f = branchFacts(sig, branch);
        if (!f) continue;  // unsatisfiable branch contributes no constraints
        if (!acc) {
            acc = *f;
        } else {
            BranchFacts merged;
            for (auto& p : acc->less)
                if (f->less.count(p)) merged.less.insert(p);
            for (auto& p : acc->equal)
                if (f->equal.count(p)) merged.equal.insert(p);
            acc = merged;
        }
    }
    if (acc) {
        out.less.assign(acc->less.begin(), acc->less.end());
        out.equal.assign(acc->equal.begin(), acc->equal.end());
    }
    return out;
}

} // namespace induct

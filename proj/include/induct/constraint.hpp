#pragma once

#include "induct/term.hpp"

#include <set>

namespace induct {

enum class AtomKind { Eq, Neq, Lt, ShapeEq, ShapeNeq, Member, NotMember };

/// Interpreted atom over constructor terms. Member atoms carry both the
/// referenced non-terminal and an instance of its pattern living in the
/// clause's variable space: the pattern variables denote the matched
/// subterms of the subject and may be shared with other atoms.
struct Atom {
    AtomKind kind;
    Term lhs;                 // subject for Member/NotMember
    Term rhs;                 // empty for Member/NotMember
    int grammarId = -1;
    int nonTerminal = -1;
    Term patternInstance;

    static Atom eq(Term a, Term b) { return {AtomKind::Eq, std::move(a), std::move(b), -1, -1, {}}; }
    static Atom neq(Term a, Term b) { return {AtomKind::Neq, std::move(a), std::move(b), -1, -1, {}}; }
    static Atom lt(Term a, Term b) { return {AtomKind::Lt, std::move(a), std::move(b), -1, -1, {}}; }
    static Atom shapeEq(Term a, Term b) { return {AtomKind::ShapeEq, std::move(a), std::move(b), -1, -1, {}}; }
    static Atom shapeNeq(Term a, Term b) { return {AtomKind::ShapeNeq, std::move(a), std::move(b), -1, -1, {}}; }
    static Atom member(Term subject, int grammar, int nt, Term pattern) {
        return {AtomKind::Member, std::move(subject), {}, grammar, nt, std::move(pattern)};
    }
    static Atom notMember(Term subject, int grammar, int nt, Term pattern) {
        return {AtomKind::NotMember, std::move(subject), {}, grammar, nt, std::move(pattern)};
    }
};

Atom applyToAtom(const Signature& sig, const Atom& a, const Substitution& s);
Atom negateAtomBasic(const Atom& a);  // Eq<->Neq, ShapeEq<->ShapeNeq, Member<->NotMember; not Lt

/// Boolean combination of atoms; an empty conjunction is true.
class Constraint {
public:
    enum class Op { True, False, Leaf, And, Or, Not };

    Constraint() : op_(Op::True) {}

    static Constraint top() { return Constraint(); }
    static Constraint bottom() { Constraint c; c.op_ = Op::False; return c; }
    static Constraint atom(Atom a);
    static Constraint conj(std::vector<Constraint> kids);
    static Constraint disj(std::vector<Constraint> kids);
    static Constraint neg(Constraint c);

    Op op() const { return op_; }
    bool isTrue() const { return op_ == Op::True; }
    bool isFalse() const { return op_ == Op::False; }
    const Atom& leaf() const { return leaf_; }
    const std::vector<Constraint>& kids() const { return kids_; }

    Constraint apply(const Signature& sig, const Substitution& s) const;
    void collectAtoms(std::vector<Atom>& out) const;
    void collectVars(std::vector<VarId>& out) const;

    /// Top-level conjuncts (flattened); {*this} if not a conjunction.
    std::vector<Constraint> conjuncts() const;

    static Constraint fromConjunction(const std::vector<Atom>& atoms);

private:
    Op op_;
    Atom leaf_{AtomKind::Eq, {}, {}, -1, -1, {}};
    std::vector<Constraint> kids_;
};

/// A clause literal; Oriented is an equation remembered as directed.
struct Literal {
    enum class Kind { Eq, Neq, Oriented };
    Kind kind;
    Term lhs, rhs;

    bool isPositive() const { return kind != Kind::Neq; }
};

/// Disjunction of literals under a constraint. The clause part is linear
/// in spec files (non-linearity is moved into the constraint at parse time).
struct ConstrainedClause {
    std::vector<Literal> literals;
    Constraint constraint;

    int depth() const;
};

ConstrainedClause applyToClause(const Signature& sig, const ConstrainedClause& c,
                                const Substitution& s);
void clauseVars(const ConstrainedClause& c, std::vector<VarId>& out);

/// ¬Member expansion hook: lists the alternative same-sort non-terminals of
/// the referenced (deterministic) grammar. Implemented by the grammar module.
struct MemberNegator {
    virtual ~MemberNegator() = default;
    virtual std::vector<Atom> alternatives(const Atom& notMember) const = 0;
};

/// NNF + DNF with negations pushed to atoms:
///   not(Eq)->Neq, not(Neq)->Eq, not(Lt(s,t))->Lt(t,s) or Eq(s,t),
///   not(ShapeEq)->ShapeNeq, not(Member)->NotMember (expanded over the other
///   same-sort non-terminals when `negator` is given).
/// Negated conjunctions expand as ordered complements (¬a1, a1 and ¬a2, ...)
/// with Member atoms first, so pattern bindings stay in scope.
std::vector<std::vector<Atom>> normalizeDnf(const Signature& sig, const Constraint& c,
                                            const MemberNegator* negator = nullptr);

/// Light per-conjunction cleanup: drops duplicates and trivially true atoms,
/// returns false if the conjunction contains a trivially false atom.
bool simplifyConjunction(const Signature& sig, std::vector<Atom>& atoms);

/// Shape depth of a ground term: nullopt when the value is not well formed
/// (a bare nullary constructor of the sort, or unbalanced same-sort children).
std::optional<int> shapeDepth(const Signature& sig, const Term& t);

std::string atomString(const Signature& sig, const Atom& a);       // debug-ish
std::string constraintString(const Signature& sig, const Constraint& c);

/// True iff the clause has a literal s = s, or the constraint is a pure
/// conjunction of equational atoms whose mgu equates some positive literal.
bool isTautology(const Signature& sig, const ConstrainedClause& cl);

/// Ordered-variable facts implied by a constraint (in every DNF branch),
/// consumed by the constraint-aware LPO checks.
struct OrderAssumptions {
    std::vector<std::pair<VarId, VarId>> less;   // (a, b) with a < b assumed
    std::vector<std::pair<VarId, VarId>> equal;

    bool isLess(VarId a, VarId b) const;
    bool isEqual(VarId a, VarId b) const;
};

OrderAssumptions assumptionsFrom(const Signature& sig, const Constraint& c);

} // namespace induct

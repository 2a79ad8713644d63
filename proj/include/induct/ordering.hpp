#pragma once

#include "induct/constraint.hpp"
#include "induct/term.hpp"

namespace induct {

enum class Cmp { Greater, Less, Equivalent, Incomparable };

/// Strict total precedence on function symbols, ranks increasing with
/// precedence. Built by the loader from `prec` declarations; unrelated
/// symbols fall back to declaration order (later declarations greater).
class Precedence {
public:
    explicit Precedence(int symbolCount = 0) : rank_(symbolCount, 0) {
        for (int i = 0; i < symbolCount; ++i) rank_[i] = i;
    }
    void setRank(SymbolId f, int rank) {
        if (f >= static_cast<SymbolId>(rank_.size())) rank_.resize(f + 1, 0);
        rank_[f] = rank;
    }
    int rank(SymbolId f) const { return rank_.at(f); }
    int size() const { return static_cast<int>(rank_.size()); }

private:
    std::vector<int> rank_;
};

/// How variables compare.
///   Strict      — a variable is equivalent only to itself (public lpo_compare).
///   MinimalConst — variables behave as a least constant, all equivalent to
///                  each other; used for the hypothesis guard C||c >> psi.
enum class VarMode { Strict, MinimalConst };

class Lpo {
public:
    Lpo(const Signature& sig, const Precedence& prec) : sig_(&sig), prec_(&prec) {}

    Cmp compare(const Term& s, const Term& t, VarMode mode = VarMode::Strict,
                const OrderAssumptions* assume = nullptr) const;
    bool greater(const Term& s, const Term& t, VarMode mode = VarMode::Strict,
                 const OrderAssumptions* assume = nullptr) const;
    bool greaterEqual(const Term& s, const Term& t, VarMode mode = VarMode::Strict,
                      const OrderAssumptions* assume = nullptr) const;
    bool equivalent(const Term& s, const Term& t, VarMode mode = VarMode::Strict,
                    const OrderAssumptions* assume = nullptr) const;

    const Signature& sig() const { return *sig_; }

private:
    const Signature* sig_;
    const Precedence* prec_;
};

/// M >mul N for the (possibly partial) LPO, Dershowitz-Manna formulation.
bool multisetGreater(const Lpo& lpo, const std::vector<Term>& m, const std::vector<Term>& n,
                     VarMode mode = VarMode::Strict, const OrderAssumptions* assume = nullptr);
bool multisetEquivalent(const Lpo& lpo, const std::vector<Term>& m, const std::vector<Term>& n,
                        VarMode mode = VarMode::Strict, const OrderAssumptions* assume = nullptr);

/// Constructor rule view used by the clause complexity measure.
struct ConstructorRuleView {
    Term lhs;
    Constraint constraint;  // the rule's own constraint (may be true)
};

/// Complexity of C||c: (multiset of literal argument-multisets, number of
/// distinct instantiated constructor-rule constraints d.sigma missing from c).
struct ClauseComplexity {
    std::vector<std::vector<Term>> literalMultiset;
    int missingConstraintCount = 0;
};

ClauseComplexity clauseComplexity(const Signature& sig, const ConstrainedClause& cl,
                                  const std::vector<ConstructorRuleView>& constructorRules);

/// The induction ordering >> : lexicographic on the two complexity components.
bool clauseGreater(const Lpo& lpo, const ConstrainedClause& c1, const ConstrainedClause& c2,
                   const std::vector<ConstructorRuleView>& constructorRules,
                   VarMode mode = VarMode::Strict, const OrderAssumptions* assume = nullptr);

} // namespace induct

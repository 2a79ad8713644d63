#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace induct {

using SortId = int;
using SymbolId = int;
using VarId = int;

enum class SymbolKind { Constructor, Defined };

struct FunctionSymbol {
    std::string name;
    std::vector<SortId> argSorts;
    SortId resultSort = -1;
    SymbolKind kind = SymbolKind::Constructor;

    int arity() const { return static_cast<int>(argSorts.size()); }
};

/// Many-sorted signature: the sort table and the constructor/defined split.
class Signature {
public:
    SortId addSort(const std::string& name);
    SymbolId addSymbol(const std::string& name, std::vector<SortId> argSorts,
                       SortId resultSort, SymbolKind kind);

    std::optional<SortId> sortByName(const std::string& name) const;
    std::optional<SymbolId> symbolByName(const std::string& name) const;

    const std::string& sortName(SortId s) const { return sorts_.at(s); }
    const FunctionSymbol& symbol(SymbolId f) const { return symbols_.at(f); }
    int sortCount() const { return static_cast<int>(sorts_.size()); }
    int symbolCount() const { return static_cast<int>(symbols_.size()); }

    std::vector<SymbolId> constructorsOfSort(SortId s) const;

private:
    std::vector<std::string> sorts_;
    std::vector<FunctionSymbol> symbols_;
    std::map<std::string, SortId> sortIndex_;
    std::map<std::string, SymbolId> symbolIndex_;
};

struct TermData;
using Term = std::shared_ptr<const TermData>;

struct TermData {
    bool isVar;
    VarId var = -1;           // valid when isVar
    std::string varName;      // display name for parsed variables
    SymbolId symbol = -1;     // valid when !isVar
    SortId sort = -1;
    std::vector<Term> args;
    int depth = 0;            // d(t): variables and constants have depth 0
    size_t hash = 0;
};

Term mkVar(VarId id, SortId sort, const std::string& name = "");
Term mkApp(const Signature& sig, SymbolId f, std::vector<Term> args);

/// Fresh variables come from a global monotone counter.
VarId freshVarId();
Term freshVar(SortId sort, const std::string& hint = "");

bool sameTerm(const Term& a, const Term& b);
bool isGround(const Term& t);
bool isLinear(const Term& t);
bool occursIn(VarId v, const Term& t);
bool constructorOnly(const Signature& sig, const Term& t);
void collectVars(const Term& t, std::vector<VarId>& out);    // first-occurrence order
std::vector<VarId> varsOf(const Term& t);

/// Positions are strings of positive integers; {} is the root.
using Position = std::vector<int>;
std::optional<Term> subtermAt(const Term& t, const Position& p);
Term replaceAt(const Signature& sig, const Term& t, const Position& p, const Term& s);
void allPositions(const Term& t, std::vector<Position>& out);

class Substitution {
public:
    Substitution() = default;

    bool bind(VarId v, const Term& t);      // false on sort clash
    const Term* lookup(VarId v) const;
    bool empty() const { return map_.empty(); }
    size_t size() const { return map_.size(); }
    const std::map<VarId, Term>& bindings() const { return map_; }

    Term apply(const Signature& sig, const Term& t) const;
    Substitution compose(const Signature& sig, const Substitution& then) const;

private:
    std::map<VarId, Term> map_;
};

/// Matching: pattern is linear in every internal use, but the general
/// (consistency-checked) case is supported.
std::optional<Substitution> matchTerm(const Signature& sig, const Term& pattern,
                                      const Term& subject);

/// Robinson unification with occurs check; result is idempotent.
std::optional<Substitution> unify(const Signature& sig, const Term& s, const Term& t);

/// Most general common instance of the inputs (renamed apart first).
std::optional<Term> mgi(const Signature& sig, const std::vector<Term>& terms);

Term renameApart(const Signature& sig, const Term& t, Substitution& renaming);

/// Canonical form modulo renaming: variables numbered by first occurrence.
Term canonicalize(const Signature& sig, const Term& t);
std::string printTerm(const Signature& sig, const Term& t);
std::string canonicalString(const Signature& sig, const Term& t);

/// Total stable order used for deterministic output and tie-breaking.
int compareTerms(const Signature& sig, const Term& a, const Term& b);

/// Enumerates all ground constructor terms of the sort with d(t) <= maxDepth,
/// in (depth, canonical) order. Test oracle and witness-search workhorse.
std::vector<Term> groundConstructorTerms(const Signature& sig, SortId sort, int maxDepth);

/// Least ground constructor term of a sort in compareTerms order, if any.
std::optional<Term> minimalGroundTerm(const Signature& sig, SortId sort);

struct SpecError : std::runtime_error {
    int line = 0, col = 0;
    SpecError(const std::string& msg, int l = 0, int c = 0)
        : std::runtime_error(msg), line(l), col(c) {}
};

} // namespace induct

#include "induct/term.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <queue>
#include <sstream>

namespace induct {

SortId Signature::addSort(const std::string& name) {
    auto it = sortIndex_.find(name);
    if (it != sortIndex_.end())
        throw SpecError("duplicate sort: " + name);
    SortId id = static_cast<SortId>(sorts_.size());
    sorts_.push_back(name);
    sortIndex_[name] = id;
    return id;
}

SymbolId Signature::addSymbol(const std::string& name, std::vector<SortId> argSorts,
                              SortId resultSort, SymbolKind kind) {
    std::string key = name + "/" + std::to_string(argSorts.size());
    if (symbolIndex_.count(key))
        throw SpecError("duplicate symbol: " + name);
    SymbolId id = static_cast<SymbolId>(symbols_.size());
    symbols_.push_back(FunctionSymbol{name, std::move(argSorts), resultSort, kind});
    symbolIndex_[key] = id;
    // Also index by bare name when unambiguous.
    if (!symbolIndex_.count(name))
        symbolIndex_[name] = id;
    return id;
}

std::optional<SortId> Signature::sortByName(const std::string& name) const {
    auto it = sortIndex_.find(name);
    if (it == sortIndex_.end()) return std::nullopt;
    return it->second;
}

std::optional<SymbolId> Signature::symbolByName(const std::string& name) const {
    auto it = symbolIndex_.find(name);
    if (it == symbolIndex_.end()) return std::nullopt;
    return it->second;
}

std::vector<SymbolId> Signature::constructorsOfSort(SortId s) const {
    std::vector<SymbolId> out;
    for (SymbolId f = 0; f < symbolCount(); ++f)
        if (symbols_[f].kind == SymbolKind::Constructor && symbols_[f].resultSort == s)
            out.push_back(f);
    return out;
}

static size_t hashCombine(size_t a, size_t b) {
    return a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2));
}

Term mkVar(VarId id, SortId sort, const std::string& name) {
    auto d = std::make_shared<TermData>();
    d->isVar = true;
    d->var = id;
    d->varName = name;
    d->sort = sort;
    d->depth = 0;
    d->hash = hashCombine(0x8badf00d, static_cast<size_t>(id));
    return d;
}

Term mkApp(const Signature& sig, SymbolId f, std::vector<Term> args) {
    const FunctionSymbol& fs = sig.symbol(f);
    if (static_cast<int>(args.size()) != fs.arity())
        throw SpecError("arity mismatch for " + fs.name);
    auto d = std::make_shared<TermData>();
    d->isVar = false;
    d->symbol = f;
    d->sort = fs.resultSort;
    d->hash = hashCombine(0xc0ffee, static_cast<size_t>(f));
    int maxChild = -1;
    for (size_t i = 0; i < args.size(); ++i) {
        if (!args[i]) throw SpecError("null argument to " + fs.name);
        if (args[i]->sort != fs.argSorts[i])
            throw SpecError("ill-sorted argument " + std::to_string(i + 1) + " to " + fs.name);
        d->hash = hashCombine(d->hash, args[i]->hash);
        maxChild = std::max(maxChild, args[i]->depth);
    }
    d->depth = args.empty() ? 0 : maxChild + 1;
    d->args = std::move(args);
    return d;
}

static std::atomic<VarId> g_varCounter{1000000};

VarId freshVarId() { return g_varCounter.fetch_add(1); }

Term freshVar(SortId sort, const std::string& hint) {
    VarId id = freshVarId();
    return mkVar(id, sort, hint);
}

bool sameTerm(const Term& a, const Term& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    if (a->hash != b->hash || a->isVar != b->isVar || a->sort != b->sort) return false;
    if (a->isVar) return a->var == b->var;
    if (a->symbol != b->symbol || a->args.size() != b->args.size()) return false;
    for (size_t i = 0; i < a->args.size(); ++i)
        if (!sameTerm(a->args[i], b->args[i])) return false;
    return true;
}

bool isGround(const Term& t) {
    if (t->isVar) return false;
    for (auto& a : t->args)
        if (!isGround(a)) return false;
    return true;
}

void collectVars(const Term& t, std::vector<VarId>& out) {
    if (t->isVar) {
        if (std::find(out.begin(), out.end(), t->var) == out.end())
            out.push_back(t->var);
        return;
    }
    for (auto& a : t->args) collectVars(a, out);
}

std::vector<VarId> varsOf(const Term& t) {
    std::vector<VarId> out;
    collectVars(t, out);
    return out;
}

static void countVarOccurrences(const Term& t, std::map<VarId, int>& cnt) {
    if (t->isVar) { cnt[t->var]++; return; }
    for (auto& a : t->args) countVarOccurrences(a, cnt);
}

bool isLinear(const Term& t) {
    std::map<VarId, int> cnt;
    countVarOccurrences(t, cnt);
    for (auto& [v, n] : cnt)
        if (n > 1) return false;
    return true;
}

bool occursIn(VarId v, const Term& t) {
    if (t->isVar) return t->var == v;
    for (auto& a : t->args)
        if (occursIn(v, a)) return true;
    return false;
}

bool constructorOnly(const Signature& sig, const Term& t) {
    if (t->isVar) return true;
    if (sig.symbol(t->symbol).kind != SymbolKind::Constructor) return false;
    for (auto& a : t->args)
        if (!constructorOnly(sig, a)) return false;
    return true;
}

std::optional<Term> subtermAt(const Term& t, const Position& p) {
    Term cur = t;
    for (int i : p) {
        if (cur->isVar || i < 1 || i > static_cast<int>(cur->args.size()))
            return std::nullopt;
        cur = cur->args[i - 1];
    }
    return cur;
}

Term replaceAt(const Signature& sig, const Term& t, const Position& p, const Term& s) {
    if (p.empty()) return s;
    if (t->isVar) throw SpecError("replaceAt: position into a variable");
    int i = p.front();
    Position rest(p.begin() + 1, p.end());
    std::vector<Term> args = t->args;
    args[i - 1] = replaceAt(sig, args[i - 1], rest, s);
    return mkApp(sig, t->symbol, std::move(args));
}

static void allPositionsRec(const Term& t, Position& cur, std::vector<Position>& out) {
    out.push_back(cur);
    if (t->isVar) return;
    for (size_t i = 0; i < t->args.size(); ++i) {
        cur.push_back(static_cast<int>(i) + 1);
        allPositionsRec(t->args[i], cur, out);
        cur.pop_back();
    }
}

void allPositions(const Term& t, std::vector<Position>& out) {
    Position cur;
    allPositionsRec(t, cur, out);
}

bool Substitution::bind(VarId v, const Term& t) {
    auto it = map_.find(v);
    if (it != map_.end()) return sameTerm(it->second, t);
    map_[v] = t;
    return true;
}

const Term* Substitution::lookup(VarId v) const {
    auto it = map_.find(v);
    return it == map_.end() ? nullptr : &it->second;
}

Term Substitution::apply(const Signature& sig, const Term& t) const {
    if (map_.empty()) return t;
    if (t->isVar) {
        const Term* b = lookup(t->var);
        return b ? *b : t;
    }
    bool changed = false;
    std::vector<Term> args;
    args.reserve(t->args.size());
    for (auto& a : t->args) {
        Term na = apply(sig, a);
        changed = changed || na.get() != a.get();
        args.push_back(na);
    }
    if (!changed) return t;
    return mkApp(sig, t->symbol, std::move(args));
}

Substitution Substitution::compose(const Signature& sig, const Substitution& then) const {
    Substitution out;
    for (auto& [v, t] : map_)
        out.map_[v] = then.apply(sig, t);
    for (auto& [v, t] : then.map_)
        if (!out.map_.count(v))
            out.map_[v] = t;
    return out;
}

static bool matchRec(const Signature& sig, const Term& pat, const Term& sub, Substitution& out) {
    if (pat->isVar) {
        if (pat->sort != sub->sort) return false;
        return out.bind(pat->var, sub);
    }
    if (sub->isVar) return false;
    if (pat->symbol != sub->symbol) return false;
    for (size_t i = 0; i < pat->args.size(); ++i)
        if (!matchRec(sig, pat->args[i], sub->args[i], out)) return false;
    return true;
}

std::optional<Substitution> matchTerm(const Signature& sig, const Term& pattern,
                                      const Term& subject) {
    Substitution out;
    if (!matchRec(sig, pattern, subject, out)) return std::nullopt;
    return out;
}

static bool unifyRec(const Signature& sig, Term s, Term t, Substitution& sol);

static bool bindVar(const Signature& sig, const Term& var, const Term& t, Substitution& sol) {
    Term rhs = sol.apply(sig, t);
    if (rhs->isVar && rhs->var == var->var) return true;
    if (occursIn(var->var, rhs)) return false;
    if (var->sort != rhs->sort) return false;
    // Keep solution idempotent: eliminate var from existing images.
    Substitution single;
    single.bind(var->var, rhs);
    Substitution updated;
    for (auto& [v, img] : sol.bindings())
        updated.bind(v, single.apply(sig, img));
    updated.bind(var->var, rhs);
    sol = updated;
    return true;
}

static bool unifyRec(const Signature& sig, Term s, Term t, Substitution& sol) {
    s = sol.apply(sig, s);
    t = sol.apply(sig, t);
    if (s->isVar) return bindVar(sig, s, t, sol);
    if (t->isVar) return bindVar(sig, t, s, sol);
    if (s->symbol != t->symbol) return false;
    for (size_t i = 0; i < s->args.size(); ++i)
        if (!unifyRec(sig, s->args[i], t->args[i], sol)) return false;
    return true;
}

std::optional<Substitution> unify(const Signature& sig, const Term& s, const Term& t) {
    Substitution sol;
    if (!unifyRec(sig, s, t, sol)) return std::nullopt;
    return sol;
}

Term renameApart(const Signature& sig, const Term& t, Substitution& renaming) {
    if (t->isVar) {
        const Term* b = renaming.lookup(t->var);
        if (b) return *b;
        Term nv = freshVar(t->sort, t->varName);
        renaming.bind(t->var, nv);
        return nv;
    }
    std::vector<Term> args;
    args.reserve(t->args.size());
    for (auto& a : t->args) args.push_back(renameApart(sig, a, renaming));
    return mkApp(sig, t->symbol, std::move(args));
}

std::optional<Term> mgi(const Signature& sig, const std::vector<Term>& terms) {
    if (terms.empty()) throw SpecError("mgi of empty list");
    Substitution r0;
    Term acc = renameApart(sig, terms[0], r0);
    for (size_t i = 1; i < terms.size(); ++i) {
        Substitution ri;
        Term next = renameApart(sig, terms[i], ri);
        auto u = unify(sig, acc, next);
        if (!u) return std::nullopt;
        acc = u->apply(sig, acc);
    }
    return canonicalize(sig, acc);
}

static Term canonicalizeRec(const Signature& sig, const Term& t,
                            std::map<VarId, Term>& ren, int& next) {
    if (t->isVar) {
        auto it = ren.find(t->var);
        if (it != ren.end()) return it->second;
        Term nv = mkVar(next, t->sort, "x" + std::to_string(next + 1));
        ++next;
        ren[t->var] = nv;
        return nv;
    }
    std::vector<Term> args;
    args.reserve(t->args.size());
    for (auto& a : t->args) args.push_back(canonicalizeRec(sig, a, ren, next));
    return mkApp(sig, t->symbol, std::move(args));
}

Term canonicalize(const Signature& sig, const Term& t) {
    std::map<VarId, Term> ren;
    int next = 0;
    return canonicalizeRec(sig, t, ren, next);
}

std::string printTerm(const Signature& sig, const Term& t) {
    if (t->isVar) {
        if (!t->varName.empty()) return t->varName;
        return "_v" + std::to_string(t->var);
    }
    const FunctionSymbol& fs = sig.symbol(t->symbol);
    if (t->args.empty()) return fs.name;
    std::ostringstream os;
    os << fs.name << "(";
    for (size_t i = 0; i < t->args.size(); ++i) {
        if (i) os << ", ";
        os << printTerm(sig, t->args[i]);
    }
    os << ")";
    return os.str();
}

static void canonicalStringRec(const Signature& sig, const Term& t,
                               std::map<VarId, int>& ren, std::string& out) {
    if (t->isVar) {
        auto it = ren.find(t->var);
        int n;
        if (it == ren.end()) {
            n = static_cast<int>(ren.size()) + 1;
            ren[t->var] = n;
        } else {
            n = it->second;
        }
        out += "x" + std::to_string(n);
        return;
    }
    out += sig.symbol(t->symbol).name;
    if (!t->args.empty()) {
        out += "(";
        for (size_t i = 0; i < t->args.size(); ++i) {
            if (i) out += ", ";
            canonicalStringRec(sig, t->args[i], ren, out);
        }
        out += ")";
    }
}

std::string canonicalString(const Signature& sig, const Term& t) {
    std::map<VarId, int> ren;
    std::string out;
    canonicalStringRec(sig, t, ren, out);
    return out;
}

static int compareRec(const Signature& sig, const Term& a, const Term& b,
                      std::map<VarId, int>& ra, std::map<VarId, int>& rb) {
    if (a->isVar != b->isVar) return a->isVar ? -1 : 1;
    if (a->isVar) {
        auto num = [](std::map<VarId, int>& m, VarId v) {
            auto it = m.find(v);
            if (it != m.end()) return it->second;
            int n = static_cast<int>(m.size()) + 1;
            m[v] = n;
            return n;
        };
        int na = num(ra, a->var), nb = num(rb, b->var);
        return na < nb ? -1 : na > nb ? 1 : 0;
    }
    const std::string& fa = sig.symbol(a->symbol).name;
    const std::string& fb = sig.symbol(b->symbol).name;
    if (fa != fb) return fa < fb ? -1 : 1;
    if (a->args.size() != b->args.size())
        return a->args.size() < b->args.size() ? -1 : 1;
    for (size_t i = 0; i < a->args.size(); ++i) {
        int c = compareRec(sig, a->args[i], b->args[i], ra, rb);
        if (c) return c;
    }
    return 0;
}

int compareTerms(const Signature& sig, const Term& a, const Term& b) {
    if (a->depth != b->depth) return a->depth < b->depth ? -1 : 1;
    std::map<VarId, int> ra, rb;
    return compareRec(sig, a, b, ra, rb);
}

std::vector<Term> groundConstructorTerms(const Signature& sig, SortId sort, int maxDepth) {
    // byDepthSort[d][s] = all ground constructor terms of sort s, depth exactly d.
    std::vector<std::vector<std::vector<Term>>> byDepth(
        maxDepth + 1, std::vector<std::vector<Term>>(sig.sortCount()));
    for (int d = 0; d <= maxDepth; ++d) {
        for (SortId s = 0; s < sig.sortCount(); ++s) {
            for (SymbolId f : sig.constructorsOfSort(s)) {
                const FunctionSymbol& fs = sig.symbol(f);
                if (fs.arity() == 0) {
                    if (d == 0) byDepth[d][s].push_back(mkApp(sig, f, {}));
                    continue;
                }
                if (d == 0) continue;
                // Choose argument depths with max == d-1.
                std::vector<Term> cur(fs.arity());
                std::function<void(int, bool)> rec = [&](int i, bool sawMax) {
                    if (i == fs.arity()) {
                        if (sawMax) byDepth[d][s].push_back(mkApp(sig, f, cur));
                        return;
                    }
                    for (int ad = 0; ad <= d - 1; ++ad) {
                        for (auto& t : byDepth[ad][fs.argSorts[i]]) {
                            cur[i] = t;
                            rec(i + 1, sawMax || ad == d - 1);
                        }
                    }
                };
                rec(0, false);
            }
        }
    }
    std::vector<Term> out;
    for (int d = 0; d <= maxDepth; ++d)
        for (auto& t : byDepth[d][sort]) out.push_back(t);
    std::stable_sort(out.begin(), out.end(), [&](const Term& a, const Term& b) {
        return compareTerms(sig, a, b) < 0;
    });
    return out;
}

std::optional<Term> minimalGroundTerm(const Signature& sig, SortId sort) {
    for (int d = 0; d <= 8; ++d) {
        auto ts = groundConstructorTerms(sig, sort, d);
        if (!ts.empty()) return ts.front();
    }
    return std::nullopt;
}

} // namespace induct

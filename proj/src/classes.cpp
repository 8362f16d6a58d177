#include "ramsey/class_spec.hpp"

#include "candidates.hpp"

#include "ramsey/canonical.hpp"
#include "ramsey/error.hpp"
#include "ramsey/formula.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace ramsey {

using detail::Options;
using detail::all_subsets;
using detail::allows_loops;
using detail::pair_options;

namespace {

const std::vector<std::string> & default_roles(Builtin kind)
{
    static const std::vector<std::string> lo{"<"}, e{"E"}, a{"A"}, ple{"prec", "lt"};
    switch (kind) {
    case Builtin::linear_order:
        return lo;
    case Builtin::tournament:
        return a;
    case Builtin::poset_linear_extension:
        return ple;
    default:
        return e;
    }
}

} // namespace

ClassSpec ClassSpec::make_builtin(Builtin kind, std::vector<std::string> roles, std::size_t clique_size)
{
    auto node = std::make_shared<Node>();
    node->kind = Kind::builtin;
    node->builtin = kind;
    node->clique_size = clique_size;
    std::vector<Symbol> symbols;
    for (const auto & r : roles)
        symbols.push_back({r, 2});
    node->signature = Signature(std::move(symbols));
    node->roles = std::move(roles);
    return ClassSpec(std::move(node));
}

ClassSpec ClassSpec::linear_order()
{
    return make_builtin(Builtin::linear_order, default_roles(Builtin::linear_order), 0);
}

ClassSpec ClassSpec::graph()
{
    return make_builtin(Builtin::graph, default_roles(Builtin::graph), 0);
}

ClassSpec ClassSpec::tournament()
{
    return make_builtin(Builtin::tournament, default_roles(Builtin::tournament), 0);
}

ClassSpec ClassSpec::clique_free(std::size_t n)
{
    if (n < 3)
        throw PreconditionError("F(" + std::to_string(n) + "): clique size must be at least 3 (K" +
                                std::to_string(n) + "-free graphs are edgeless)");
    return make_builtin(Builtin::clique_free, default_roles(Builtin::clique_free), n);
}

ClassSpec ClassSpec::poset_linear_extension()
{
    return make_builtin(Builtin::poset_linear_extension, default_roles(Builtin::poset_linear_extension), 0);
}

ClassSpec ClassSpec::permutations()
{
    return wedge(rename_symbols(linear_order(), "a"), rename_symbols(linear_order(), "b"));
}

ClassSpec wedge(const ClassSpec & left, const ClassSpec & right)
{
    if (!left.signature().disjoint_from(right.signature()))
        throw PreconditionError("wedge: signatures overlap (" + left.signature().to_string() + " and " +
                                right.signature().to_string() + "); rename one side first");
    auto node = std::make_shared<ClassSpec::Node>();
    node->kind = ClassSpec::Kind::wedge;
    node->signature = left.signature().union_with(right.signature());
    node->left = std::make_shared<const ClassSpec>(left);
    node->right = std::make_shared<const ClassSpec>(right);
    return ClassSpec(std::move(node));
}

ClassSpec forget(const ClassSpec & inner, const std::set<std::string> & dropped)
{
    for (const auto & name : dropped)
        if (!inner.signature().contains(name))
            throw PreconditionError("forget: '" + name + "' is not a symbol of " + inner.describe());
    auto node = std::make_shared<ClassSpec::Node>();
    node->kind = ClassSpec::Kind::forget;
    auto keep = inner.signature().names();
    for (const auto & name : dropped)
        keep.erase(name);
    node->signature = inner.signature().restricted_to(keep);
    node->left = std::make_shared<const ClassSpec>(inner);
    node->dropped = dropped;
    return ClassSpec(std::move(node));
}

ClassSpec rename_symbols(const ClassSpec & spec, const std::string & prefix)
{
    if (prefix.empty())
        throw PreconditionError("rename: prefix must be non-empty");
    if (!is_valid_symbol_name(prefix))
        throw PreconditionError("rename: invalid prefix '" + prefix + "'");
    auto renamed = [&](const std::string & s) { return prefix + "." + s; };
    switch (spec.kind()) {
    case ClassSpec::Kind::builtin: {
        std::vector<std::string> roles;
        for (const auto & r : spec.roles())
            roles.push_back(renamed(r));
        return ClassSpec::make_builtin(spec.builtin(), std::move(roles), spec.clique_size());
    }
    case ClassSpec::Kind::wedge:
        return wedge(rename_symbols(spec.left(), prefix), rename_symbols(spec.right(), prefix));
    case ClassSpec::Kind::forget: {
        std::set<std::string> dropped;
        for (const auto & d : spec.dropped())
            dropped.insert(renamed(d));
        return forget(rename_symbols(spec.inner(), prefix), dropped);
    }
    }
    throw PreconditionError("rename: unknown class kind");
}

std::string ClassSpec::describe() const
{
    switch (kind()) {
    case Kind::builtin: {
        std::string base;
        switch (builtin()) {
        case Builtin::linear_order:
            base = "LO";
            break;
        case Builtin::graph:
            base = "G";
            break;
        case Builtin::tournament:
            base = "T";
            break;
        case Builtin::clique_free:
            base = "F(" + std::to_string(clique_size()) + ")";
            break;
        case Builtin::poset_linear_extension:
            base = "PLE";
            break;
        }
        const auto & defaults = default_roles(builtin());
        const auto & first = roles().front();
        if (first == defaults.front())
            return base;
        auto prefix = first.substr(0, first.size() - defaults.front().size() - 1);
        return "rename(" + base + ",\"" + prefix + "\")";
    }
    case Kind::wedge:
        return "wedge(" + left().describe() + "," + right().describe() + ")";
    case Kind::forget: {
        std::string out = "forget(" + inner().describe() + ",{";
        bool first = true;
        for (const auto & d : dropped()) {
            out += (first ? "" : ",") + d;
            first = false;
        }
        return out + "})";
    }
    }
    return {};
}

std::map<std::string, RelationShape> relation_shapes(const ClassSpec & spec)
{
    std::map<std::string, RelationShape> out;
    switch (spec.kind()) {
    case ClassSpec::Kind::builtin: {
        const auto & r = spec.roles();
        switch (spec.builtin()) {
        case Builtin::linear_order:
            out[r[0]] = RelationShape::linear_order;
            break;
        case Builtin::graph:
        case Builtin::clique_free:
            out[r[0]] = RelationShape::graph;
            break;
        case Builtin::tournament:
            out[r[0]] = RelationShape::tournament;
            break;
        case Builtin::poset_linear_extension:
            out[r[0]] = RelationShape::oriented;
            out[r[1]] = RelationShape::linear_order;
            break;
        }
        break;
    }
    case ClassSpec::Kind::wedge:
        out = relation_shapes(spec.left());
        for (const auto & [k, v] : relation_shapes(spec.right()))
            out[k] = v;
        break;
    case ClassSpec::Kind::forget:
        out = relation_shapes(spec.inner());
        for (const auto & d : spec.dropped())
            out.erase(d);
        break;
    }
    return out;
}

namespace {


bool symmetric_irreflexive(const Relation & e)
{
    for (const auto & t : e.tuples())
        if (t[0] == t[1] || !e.contains({t[1], t[0]}))
            return false;
    return true;
}

bool has_clique(const Relation & e, Element n, std::size_t k)
{
    std::vector<Element> clique;
    std::function<bool(Element)> grow = [&](Element from) {
        if (clique.size() == k)
            return true;
        for (Element v = from; v < n; ++v) {
            bool adjacent = std::all_of(clique.begin(), clique.end(), [&](Element u) { return e.contains({u, v}); });
            if (!adjacent)
                continue;
            clique.push_back(v);
            if (grow(v + 1))
                return true;
            clique.pop_back();
        }
        return false;
    };
    return grow(0);
}

bool builtin_member(const ClassSpec & spec, const Structure & s)
{
    const Element n = static_cast<Element>(s.size());
    const auto & roles = spec.roles();
    switch (spec.builtin()) {
    case Builtin::linear_order:
        return is_strict_linear_order(s, roles[0]);
    case Builtin::graph:
        return symmetric_irreflexive(s.relation(roles[0]));
    case Builtin::clique_free: {
        const auto & e = s.relation(roles[0]);
        return symmetric_irreflexive(e) && !has_clique(e, n, spec.clique_size());
    }
    case Builtin::tournament: {
        const auto & a = s.relation(roles[0]);
        for (Element x = 0; x < n; ++x) {
            if (a.contains({x, x}))
                return false;
            for (Element y = x + 1; y < n; ++y)
                if (a.contains({x, y}) == a.contains({y, x}))
                    return false;
        }
        return true;
    }
    case Builtin::poset_linear_extension: {
        if (!is_strict_linear_order(s, roles[1]))
            return false;
        const auto & prec = s.relation(roles[0]);
        const auto & lt = s.relation(roles[1]);
        for (const auto & t : prec.tuples()) {
            if (!lt.contains(t))
                return false; // also rules out loops and 2-cycles
            for (Element z = 0; z < n; ++z)
                if (prec.contains({t[1], z}) && !prec.contains({t[0], z}))
                    return false;
        }
        return true;
    }
    }
    return false;
}


// Groups of alternatives for the tuples of one symbol that mention the new
// element k, given the relation on {0..k-1}.
std::vector<Options> extension_groups(RelationShape shape, std::size_t arity, const Relation & existing, Element k)
{
    if (arity != 2)
        return {all_subsets(detail::tuples_touching(arity, k))};
    if (shape == RelationShape::linear_order) {
        // Insert k at each rank of the existing order.
        std::vector<std::size_t> rank(k, 0);
        for (const auto & t : existing.tuples())
            ++rank[t[1]];
        std::vector<std::size_t> sorted = rank;
        std::sort(sorted.begin(), sorted.end());
        bool is_order = existing.size() == static_cast<std::size_t>(k) * (k - (k > 0 ? 1 : 0)) / 2;
        for (std::size_t i = 0; i < sorted.size(); ++i)
            is_order = is_order && sorted[i] == i;
        if (is_order) {
            Options insertions;
            for (std::size_t p = 0; p <= k; ++p) {
                std::vector<Tuple> tuples;
                for (Element j = 0; j < k; ++j)
                    tuples.push_back(rank[j] < p ? Tuple{j, k} : Tuple{k, j});
                insertions.push_back(std::move(tuples));
            }
            return {insertions};
        }
    }
    std::vector<Options> groups;
    for (Element j = 0; j < k; ++j)
        groups.push_back(pair_options(shape, j, k));
    if (allows_loops(shape))
        groups.push_back({{}, {{k, k}}});
    return groups;
}

std::vector<Tuple> permutation_order(const std::vector<Element> & perm)
{
    std::vector<Tuple> out;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            out.push_back({perm[i], perm[j]});
    return out;
}

} // namespace

std::vector<std::vector<Tuple>> candidate_relations(RelationShape shape, std::size_t arity, std::size_t n)
{
    std::vector<std::vector<Tuple>> out;
    if (arity == 2 && shape == RelationShape::linear_order) {
        std::vector<Element> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do
            out.push_back(permutation_order(perm));
        while (std::next_permutation(perm.begin(), perm.end()));
        return out;
    }
    std::vector<Options> groups;
    if (arity == 2) {
        for (Element i = 0; i < n; ++i) {
            if (allows_loops(shape))
                groups.push_back({{}, {{i, i}}});
            for (Element j = i + 1; j < n; ++j)
                groups.push_back(pair_options(shape, i, j));
        }
    } else {
        Relation empty(arity, 0);
        for (Element k = 0; k < n; ++k)
            for (auto & g : extension_groups(RelationShape::any, arity, empty, k))
                groups.push_back(std::move(g));
    }
    detail::for_each_pick(groups, [&](const std::vector<std::size_t> & pick) {
        std::vector<Tuple> tuples;
        for (std::size_t g = 0; g < groups.size(); ++g)
            tuples.insert(tuples.end(), groups[g][pick[g]].begin(), groups[g][pick[g]].end());
        out.push_back(std::move(tuples));
        return true;
    });
    return out;
}

namespace {

bool forget_member(const ClassSpec & spec, const Structure & s)
{
    auto shapes = relation_shapes(spec.inner());
    const auto & inner_sig = spec.inner().signature();
    std::vector<Symbol> dropped_symbols;
    std::vector<Options> groups;
    for (const auto & name : spec.dropped()) {
        const auto & sym = inner_sig[*inner_sig.index_of(name)];
        dropped_symbols.push_back(sym);
        auto shape = shapes.count(name) ? shapes.at(name) : RelationShape::any;
        groups.push_back(candidate_relations(shape, sym.arity, s.size()));
    }
    Signature extra_sig(dropped_symbols);
    bool found = false;
    // Each group holds whole candidate relations for one dropped symbol.
    detail::for_each_pick(groups, [&](const std::vector<std::size_t> & pick) {
        std::vector<std::vector<Tuple>> rels;
        for (std::size_t i = 0; i < groups.size(); ++i)
            rels.push_back(groups[i][pick[i]]);
        found = is_member(spec.inner(), combine(s, Structure(extra_sig, s.size(), std::move(rels))));
        return !found;
    });
    return found;
}

} // namespace

bool is_member(const ClassSpec & spec, const Structure & s)
{
    require_same_signature(spec.signature(), s.signature(), "membership in " + spec.describe());
    switch (spec.kind()) {
    case ClassSpec::Kind::builtin:
        return builtin_member(spec, s);
    case ClassSpec::Kind::wedge:
        return is_member(spec.left(), reduct(s, spec.left().signature().names())) &&
               is_member(spec.right(), reduct(s, spec.right().signature().names()));
    case ClassSpec::Kind::forget:
        return forget_member(spec, s);
    }
    return false;
}

std::vector<std::vector<Structure>> enumerate_members_up_to(const ClassSpec & spec, std::size_t n)
{
    const auto & sig = spec.signature();
    auto shapes = relation_shapes(spec);
    std::vector<std::vector<Structure>> levels;
    Structure empty(sig, 0);
    levels.push_back({});
    if (is_member(spec, empty))
        levels.back().push_back(empty);

    for (std::size_t size = 1; size <= n; ++size) {
        const Element k = static_cast<Element>(size - 1);
        std::map<CanonicalForm, Structure> found;
        for (const auto & rep : levels.back()) {
            std::vector<Options> groups;
            std::vector<std::size_t> group_symbol;
            for (std::size_t s = 0; s < sig.size(); ++s) {
                auto shape = shapes.count(sig[s].name) ? shapes.at(sig[s].name) : RelationShape::any;
                for (auto & g : extension_groups(shape, sig[s].arity, rep.relation(s), k)) {
                    groups.push_back(std::move(g));
                    group_symbol.push_back(s);
                }
            }
            // One pick per group; each group's tuples belong to one symbol.
            detail::for_each_pick(groups, [&](const std::vector<std::size_t> & pick) {
                std::vector<std::vector<Tuple>> rels(sig.size());
                for (std::size_t s = 0; s < sig.size(); ++s)
                    rels[s] = rep.relation(s).tuples();
                for (std::size_t g = 0; g < groups.size(); ++g) {
                    const auto & alt = groups[g][pick[g]];
                    rels[group_symbol[g]].insert(rels[group_symbol[g]].end(), alt.begin(), alt.end());
                }
                Structure candidate(sig, size, std::move(rels));
                if (is_member(spec, candidate)) {
                    auto lab = canonical_labelling(candidate);
                    if (!found.count(lab.form))
                        found.emplace(lab.form, relabel(candidate, lab.labelling));
                }
                return true;
            });
        }
        std::vector<Structure> level;
        for (auto & [form, s] : found)
            level.push_back(std::move(s));
        levels.push_back(std::move(level));
    }
    return levels;
}

std::vector<Structure> enumerate_members(const ClassSpec & spec, std::size_t n)
{
    return enumerate_members_up_to(spec, n).back();
}

} // namespace ramsey

/**
 * Analysis reports: ordered sections of key/value pairs, optional tables,
 * and embedded certificates that can be re-verified from the report text
 * alone.
 *
 * Structured form:
 *
 *     gptlab-report 1
 *     command = analyze
 *     subject = rebit
 *
 *     [lp-model]
 *     certificate = model
 *     against = theory
 *     D.1 = [1/2, 1/2, 1/2]
 *     ...
 */

#ifndef GPTLAB_REPORT_HPP
#define GPTLAB_REPORT_HPP

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "contextuality.hpp"
#include "error.hpp"
#include "gpt.hpp"
#include "io.hpp"
#include "resources.hpp"

namespace gptlab {

struct TextTable
{
    std::vector<std::string> columns;
    std::vector<std::pair<std::string, std::vector<std::string>>> rows;

    friend bool operator==(const TextTable&, const TextTable&) = default;
};

struct Section
{
    std::string name;
    std::vector<std::pair<std::string, std::string>> fields;
    std::optional<TextTable> table;

    Section& add(std::string key, std::string value)
    {
        fields.emplace_back(std::move(key), std::move(value));
        return *this;
    }

    std::optional<std::string> get(const std::string& key) const
    {
        for (const auto& [k, v] : fields)
            if (k == key)
                return v;
        return std::nullopt;
    }

    /// Values of key.1, key.2, ... in order.
    std::vector<std::string> indexed(const std::string& key) const
    {
        std::vector<std::string> out;
        for (std::size_t i = 1;; ++i)
        {
            auto v = get(key + "." + std::to_string(i));
            if (!v)
                return out;
            out.push_back(*v);
        }
    }

    friend bool operator==(const Section&, const Section&) = default;
};

struct Report
{
    std::string command;
    std::string subject;
    std::vector<Section> sections;

    Section& add(std::string name)
    {
        sections.push_back(Section{std::move(name), {}, std::nullopt});
        return sections.back();
    }

    const Section* find(const std::string& name) const
    {
        for (const Section& s : sections)
            if (s.name == name)
                return &s;
        return nullptr;
    }

    friend bool operator==(const Report&, const Report&) = default;
};

namespace detail {

inline std::string yes_no(bool b)
{
    return b ? "true" : "false";
}

inline std::string labels(const std::vector<Labeled>& xs)
{
    std::string out;
    for (const Labeled& x : xs)
        out += (out.empty() ? "" : ", ") + x.label;
    return out;
}

inline std::string rationals(const std::vector<Rational>& xs)
{
    return to_string(Vec(xs));
}

inline Section& add_theory(Report& r, const std::string& name, const Gpt& g)
{
    Section& s = r.add(name);
    s.add("name", g.name());
    s.add("dimension", std::to_string(g.dim()));
    s.add("unit", to_string(g.unit()));
    s.add("no_restriction_asserted", yes_no(g.asserts_no_restriction()));
    for (const Labeled& e : g.effects())
        s.add("effect." + e.label, to_string(e.vector));
    for (const Labeled& st : g.states())
        s.add("state." + st.label, to_string(st.vector));
    return s;
}

inline void add_table(Section& s, const ProbabilityTable& t)
{
    TextTable out;
    out.columns = t.column_labels;
    for (std::size_t i = 0; i < t.row_labels.size(); ++i)
    {
        std::vector<std::string> cells;
        for (std::size_t j = 0; j < t.column_labels.size(); ++j)
            cells.push_back(to_string(t.entries(i, j)));
        out.rows.emplace_back(t.row_labels[i], std::move(cells));
    }
    s.table = std::move(out);
}

inline void add_model(Report& r, const std::string& name, const std::string& against, const OntModel& m)
{
    Section& s = r.add(name);
    s.add("certificate", "model");
    s.add("against", against);
    s.add("ontic_size", std::to_string(m.ontic_size()));
    for (std::size_t l = 0; l < m.ontic_size(); ++l)
        s.add("D." + std::to_string(l + 1), to_string(m.state_frame[l]));
    for (std::size_t l = 0; l < m.ontic_size(); ++l)
        s.add("F." + std::to_string(l + 1), to_string(m.effect_frame[l]));
}

inline void add_decomposition(Report& r, const std::string& name, const NonUniqueDecomposition& w)
{
    Section& s = r.add(name);
    s.add("certificate", "decomposition");
    s.add("normalizer", to_string(w.normalizer));
    s.add("point", to_string(w.point));
    for (std::size_t i = 0; i < w.generators.size(); ++i)
    {
        s.add("label." + std::to_string(i + 1), w.generators[i].label);
        s.add("generator." + std::to_string(i + 1), to_string(w.generators[i].vector));
    }
    s.add("dependent", w.generators[w.dependent].label);
    s.add("expansion", rationals(w.expansion));
    Rational total = 0;
    for (const Rational& a : w.expansion)
        total += a;
    s.add("expansion_sum", to_string(total));
    s.add("slice", "generators rescaled to <normalizer, g> = 1, so every affine dependence sums to 1");
    s.add("total_positive", to_string(w.total_positive));
    s.add("first", rationals(w.first));
    s.add("second", rationals(w.second));
    auto describe = [&](const std::vector<Rational>& c) {
        std::string out;
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c[i] != 0)
                out += (out.empty() ? "" : " + ") + to_string(c[i]) + " " + w.generators[i].label;
        return out;
    };
    s.add("first_terms", describe(w.first));
    s.add("second_terms", describe(w.second));
}

inline void add_membership(Report& r, const std::string& name, const Vec& query, const std::vector<Vec>& gens,
                           const MembershipCertificate& c)
{
    Section& s = r.add(name);
    s.add("certificate", "membership");
    s.add("convex", yes_no(c.convex));
    s.add("query", to_string(query));
    for (std::size_t i = 0; i < gens.size(); ++i)
        s.add("generator." + std::to_string(i + 1), to_string(gens[i]));
    s.add("inside", yes_no(c.inside));
    if (c.inside)
        s.add("coefficients", rationals(c.coefficients));
    else
    {
        s.add("separator", to_string(c.separator));
        s.add("offset", to_string(c.offset));
    }
}

inline void add_farkas(Report& r, const std::string& name, const EmbedLpResult& lp)
{
    Section& s = r.add(name);
    s.add("certificate", "farkas");
    for (std::size_t i = 0; i < lp.state_dual_rays.size(); ++i)
        s.add("h." + std::to_string(i + 1), to_string(lp.state_dual_rays[i]));
    for (std::size_t i = 0; i < lp.effect_dual_points.size(); ++i)
        s.add("r." + std::to_string(i + 1), to_string(lp.effect_dual_points[i]));
    s.add("Y", rationals(lp.farkas));
    s.add("claim", "<h_a, Y r_b> >= 0 for all a, b and trace(Y) < 0");
}

inline void add_indistinguishable(Report& r, const std::string& name, const IndistinguishablePair& p,
                                  const std::vector<Labeled>& effects)
{
    Section& s = r.add(name);
    s.add("certificate", "indistinguishable");
    s.add("first", to_string(p.first));
    s.add("second", to_string(p.second));
    s.add("direction", to_string(p.direction));
    for (std::size_t i = 0; i < p.responses.rows(); ++i)
    {
        s.add("response_label." + std::to_string(i + 1), effects[i].label);
        s.add("response." + std::to_string(i + 1), to_string(p.responses.row(i)));
    }
    s.add("statistics", to_string(p.responses * p.second));
}

inline void add_validation(Report& r, const Gpt& g)
{
    ValidationReport v = validate(g);
    Section& s = r.add("validation");
    s.add("valid", yes_no(v.ok()));
    for (std::size_t i = 0; i < v.violations.size(); ++i)
        s.add("violation." + std::to_string(i + 1), v.violations[i].invariant + ": " + v.violations[i].witness);
}

inline void add_probability_table(Report& r, const Gpt& g)
{
    ProbabilityTable t = probability_table(g);
    Section& s = r.add("table");
    s.add("rows", "states");
    s.add("columns", "effects");
    s.add("rank", std::to_string(min_model_dimension(t)));
    s.add("min_model_dimension", std::to_string(min_model_dimension(t)));
    add_table(s, t);
}

inline std::size_t rank_bound(const Gpt& g)
{
    return min_model_dimension(probability_table(pure_states(g), nonrefinable_effects(g)));
}

inline NoRestrictionReport add_no_restriction(Report& r, const Gpt& g)
{
    NoRestrictionReport nr = no_restriction_check(g);
    Section& s = r.add("no-restriction");
    s.add("holds", yes_no(nr.holds()));
    s.add("asserted", yes_no(g.asserts_no_restriction()));
    s.add("assertion_consistent", yes_no(!nr.assertion_inconsistent));
    s.add("states_complete", yes_no(nr.states_complete));
    s.add("effects_complete", yes_no(nr.effects_complete));
    s.add("state_set_bounded", yes_no(nr.bounded));
    for (std::size_t i = 0; i < nr.missing_states.size(); ++i)
        s.add("missing_state." + std::to_string(i + 1), to_string(nr.missing_states[i]));
    for (std::size_t i = 0; i < nr.missing_effects.size(); ++i)
        s.add("missing_effect." + std::to_string(i + 1), to_string(nr.missing_effects[i]));
    if (!nr.holds())
        s.add("note", "the given states are read as their convex hull; a subtheory need not be convexly closed "
                      "operationally, which does not affect the cone geometry used here");
    std::vector<Vec> sv = g.state_vectors(), ev = g.effect_vectors();
    for (std::size_t i = 0; i < nr.missing_states.size(); ++i)
        add_membership(r, "missing-state-" + std::to_string(i + 1), nr.missing_states[i], sv,
                       member_convex(nr.missing_states[i], sv));
    for (std::size_t i = 0; i < nr.missing_effects.size(); ++i)
        add_membership(r, "missing-effect-" + std::to_string(i + 1), nr.missing_effects[i], ev,
                       member_cone(nr.missing_effects[i], ev));
    return nr;
}

/// Classification of a theory obeying no-restriction, under `prefix`.
inline void add_classification(Report& r, const std::string& prefix, const std::string& against, const Gpt& g)
{
    ContextualityVerdict v = classify(g);
    Section& s = r.add(prefix + "contextuality");
    s.add("verdict", v.noncontextual ? "noncontextual" : "contextual");
    s.add("pure_states", labels(v.pure));
    s.add("pure_states_simplicial", yes_no(is_basis(v.pure, g.dim())));
    s.add("nonrefinable_effects", labels(v.nonrefinable));
    s.add("nonrefinable_effects_simplicial", yes_no(is_basis(v.nonrefinable, g.dim())));
    if (v.noncontextual)
    {
        s.add("model", "Dirac model: D = pure states, F = dual basis");
        add_model(r, prefix + "dirac-model", against, *v.model);
    }
    else
    {
        s.add("failing_side", to_string(v.failing_side()));
        if (v.state_witness)
            add_decomposition(r, prefix + "state-witness", *v.state_witness);
        if (v.effect_witness)
            add_decomposition(r, prefix + "effect-witness", *v.effect_witness);
    }
}

inline void add_exact_dim(Report& r, const Gpt& g, std::size_t bound)
{
    ExactDimResult ex = embed_exact_dim(g);
    Section& s = r.add("exact-dim-embedding");
    s.add("ontic_size_sought", std::to_string(g.dim()));
    s.add("candidates_explored", std::to_string(ex.explored));
    s.add("rank_bound", std::to_string(bound));
    if (ex.model)
    {
        s.add("result", "found");
        s.add("found_among", *ex.found_on == Side::effects ? "dual rays of the state cone (F side)"
                                                          : "dual rays of the effect cone (D side)");
        add_model(r, "exact-dim-model", "theory", *ex.model);
    }
    else
    {
        s.add("result", "none-found");
        s.add("scope", "within candidate class: dim-subsets of the dual rays of the state cone (F) and of the "
                       "effect cone (D)");
    }
}

inline EmbedLpResult add_lp(Report& r, const Gpt& g, std::size_t bound)
{
    EmbedLpResult lp = embed_lp(g);
    Section& s = r.add("lp-embedding");
    s.add("candidate_pairs", std::to_string(lp.state_dual_rays.size() * lp.effect_dual_points.size()));
    s.add("rank_bound", std::to_string(bound));
    if (lp.model)
    {
        s.add("result", "found");
        s.add("ontic_size", std::to_string(lp.model->ontic_size()));
        s.add("exceeds_dimension", yes_no(lp.model->ontic_size() > g.dim()));
        s.add("rank_bound_respected", yes_no(lp.model->ontic_size() >= bound));
        add_model(r, "lp-model", "theory", *lp.model);
    }
    else
    {
        s.add("result", "infeasible");
        add_farkas(r, "lp-farkas", lp);
    }
    return lp;
}

inline void add_indistinguishability(Report& r, const Gpt& g, const OntModel& m)
{
    auto p = indistinguishability_witness(g, m);
    Section& s = r.add("indistinguishability");
    s.add("ontic_size", std::to_string(m.ontic_size()));
    s.add("dimension", std::to_string(g.dim()));
    if (!p)
    {
        s.add("result", "none");
        s.add("reason", "responses of the effect generators separate all ontic distributions");
        return;
    }
    s.add("result", "found");
    s.add("meaning", "two distinct ontic distributions with identical statistics on every effect");
    add_indistinguishable(r, "indistinguishable-pair", *p, g.effects());
}

inline void add_resource(Report& r, const std::string& prefix, const Gpt& g, const BonusElement& b)
{
    std::optional<ResourceVerdict> ov;
    try
    {
        ov = classify_bonus(g, b);
    }
    catch (const EmptyTheoryError& e)
    {
        Section& s = r.add(prefix);
        s.add("bonus_kind", to_string(b.kind));
        s.add("bonus_label", b.label);
        s.add("bonus", to_string(b.vector));
        s.add("classification", "rejected");
        s.add("reason", e.what());
        std::vector<Vec> gens = g.effect_vectors();
        gens.push_back(b.vector);
        gens.push_back(g.unit() - b.vector);
        add_membership(r, prefix + "-emptiness", -g.unit(), gens, e.evidence());
        return;
    }
    const ResourceVerdict& v = *ov;
    Section& s = r.add(prefix);
    s.add("bonus_kind", to_string(b.kind));
    s.add("bonus_label", b.label);
    s.add("bonus", to_string(b.vector));
    s.add("classification", to_string(v.classification));
    s.add("condition_i", yes_no(v.contextual_extension.holds) + " (" + v.contextual_extension.evidence + ")");
    s.add("condition_ii", yes_no(v.nonclassical_resource.holds) + " (" + v.nonclassical_resource.evidence + ")");
    s.add("condition_iii", yes_no(v.overcomplete.holds) + " (" + v.overcomplete.evidence + ")");
    s.add("condition_iv", yes_no(v.outside_in_span.holds) + " (" + v.outside_in_span.evidence + ")");
    s.add("nonrefinable_premise", yes_no(v.nonrefinable_premise));
    s.add("extended_states", labels(v.extension.theory.states()));
    s.add("extended_effects", labels(v.extension.theory.effects()));
    s.add("expelled", labels(v.extension.expelled));
    for (std::size_t i = 0; i < v.notes.size(); ++i)
        s.add("note." + std::to_string(i + 1), v.notes[i]);
    if (v.decomposition)
        add_decomposition(r, prefix + "-overcompletion", *v.decomposition);
    if (v.exclusion && !v.exclusion->inside)
    {
        std::vector<Vec> gens = b.kind == BonusKind::effect ? g.effect_vectors() : g.state_vectors();
        Vec q = b.vector;
        if (b.kind == BonusKind::effect)
        {
            if (member_cone(b.vector, gens).inside)
                q = g.unit() - b.vector;
        }
        add_membership(r, prefix + "-exclusion", q, gens, *v.exclusion);
    }
}

}   // namespace detail

/**
 * Full analysis: validation, table, no-restriction, then either the
 * classification or (for subtheories) the completion verdict next to both
 * embedding searches, and finally any bonus elements in the file.
 */
inline Report analyze(const TheoryFile& f)
{
    const Gpt& g = f.theory;
    Report r{"analyze", g.name(), {}};
    detail::add_theory(r, "theory", g);
    detail::add_validation(r, g);
    detail::add_probability_table(r, g);
    NoRestrictionReport nr = detail::add_no_restriction(r, g);
    std::size_t bound = detail::rank_bound(g);
    std::optional<bool> classical;
    if (nr.holds())
    {
        detail::add_classification(r, "", "theory", g);
        classical = classify(g).noncontextual;
    }
    else
    {
        Gpt c = complete(g, CompletionMode::fix_effects);
        Section& s = r.add("completion");
        s.add("mode", "fix effects: states become the normalized dual of the effect cone");
        s.add("no_restriction", detail::yes_no(no_restriction_check(c).holds()));
        std::vector<Labeled> pure = pure_states(c);
        s.add("pure_states", std::to_string(pure.size()));
        s.add("simplicial", detail::yes_no(detail::is_basis(pure, c.dim())));
        detail::add_theory(r, "completion-theory", c);
        if (no_restriction_check(c).holds())
            detail::add_classification(r, "completion-", "completion-theory", c);

        detail::add_exact_dim(r, g, bound);
        EmbedLpResult lp = detail::add_lp(r, g, bound);
        Section& v = r.add("subtheory-verdicts");
        const Section* ex = r.find("exact-dim-embedding");
        bool same_dim = ex && ex->get("result") == "found";
        v.add("same_dimension_model", same_dim ? "found" : "none-found within candidate class");
        v.add("model_of_some_cardinality", lp.model ? "found" : "none");
        v.add("verdict", same_dim ? "noncontextual" : "contextual");
        v.add("note", "the two notions are reported side by side and not merged");
        if (lp.model && lp.model->ontic_size() > g.dim())
            detail::add_indistinguishability(r, g, *lp.model);
    }
    for (std::size_t i = 0; i < f.bonus.size(); ++i)
    {
        if (classical && *classical && f.bonus[i].vector.dim() >= g.dim())
            detail::add_resource(r, "resource-" + std::to_string(i + 1), g, f.bonus[i]);
        else
        {
            Section& s = r.add("resource-" + std::to_string(i + 1));
            s.add("bonus_label", f.bonus[i].label);
            s.add("classification", "not evaluated");
            s.add("reason", "the free theory is not a classical theory obeying the no-restriction hypothesis");
        }
    }
    return r;
}

inline Report table_report(const Gpt& g)
{
    Report r{"table", g.name(), {}};
    detail::add_probability_table(r, g);
    return r;
}

inline Report complete_report(const Gpt& g, CompletionMode mode)
{
    Report r{"complete", g.name(), {}};
    Gpt c = complete(g, mode);
    Section& s = r.add("completion");
    s.add("mode", mode == CompletionMode::fix_effects ? "fix effects" : "fix states");
    NoRestrictionReport nr = no_restriction_check(c);
    s.add("no_restriction", detail::yes_no(nr.holds()));
    s.add("states", std::to_string(c.states().size()));
    s.add("effects", std::to_string(c.effects().size()));
    detail::add_theory(r, "completion-theory", c);
    return r;
}

inline Report embed_report(const Gpt& g, bool exact_dim)
{
    Report r{exact_dim ? "embed --exact-dim" : "embed", g.name(), {}};
    detail::add_theory(r, "theory", g);
    std::size_t bound = detail::rank_bound(g);
    if (exact_dim)
        detail::add_exact_dim(r, g, bound);
    else
        detail::add_lp(r, g, bound);
    return r;
}

inline Report decomposition_report(const Gpt& g)
{
    if (!validate(g).ok())
        throw PreconditionError("witness: theory '" + g.name() + "' does not validate");
    Report r{"witness --lemma2", g.name(), {}};
    std::vector<Labeled> pure = pure_states(g);
    std::vector<Labeled> nonref = nonrefinable_effects(g);
    Section& s = r.add("decompositions");
    s.add("pure_states", detail::labels(pure));
    s.add("nonrefinable_effects", detail::labels(nonref));
    auto sw = nonunique_decomposition(pure, g.unit());
    auto w = strictly_positive_functional(vectors_of(nonref), g.dim());
    std::optional<NonUniqueDecomposition> ew;
    if (w)
        ew = nonunique_decomposition(nonref, *w);
    s.add("states", sw ? "non-unique decomposition" : "unique decompositions (linearly independent)");
    s.add("effects", ew ? "non-unique decomposition" : "unique decompositions (linearly independent)");
    if (sw)
        detail::add_decomposition(r, "state-witness", *sw);
    if (ew)
        detail::add_decomposition(r, "effect-witness", *ew);
    return r;
}

inline Report indistinguishable_report(const Gpt& g)
{
    Report r{"witness --indistinguishable", g.name(), {}};
    detail::add_theory(r, "theory", g);
    EmbedLpResult lp = detail::add_lp(r, g, detail::rank_bound(g));
    if (lp.model)
        detail::add_indistinguishability(r, g, *lp.model);
    return r;
}

inline Report resource_report(const Gpt& g, const std::vector<BonusElement>& bonus)
{
    Report r{"classify-resource", g.name(), {}};
    if (bonus.empty())
        throw InputError("no bonus element given; use --effect or --state, or a 'bonus:' section");
    for (std::size_t i = 0; i < bonus.size(); ++i)
        detail::add_resource(r, bonus.size() == 1 ? "resource" : "resource-" + std::to_string(i + 1), g, bonus[i]);
    return r;
}

/// The stable structured text form of a report.
inline std::string to_structured(const Report& r)
{
    std::ostringstream out;
    out << "gptlab-report 1\n";
    out << "command = " << r.command << "\n";
    out << "subject = " << r.subject << "\n";
    for (const Section& s : r.sections)
    {
        out << "\n[" << s.name << "]\n";
        for (const auto& [k, v] : s.fields)
            out << k << " = " << v << "\n";
        if (s.table)
        {
            std::string cols;
            for (const std::string& c : s.table->columns)
                cols += (cols.empty() ? "" : " | ") + c;
            out << "table.columns = " << cols << "\n";
            for (const auto& [label, cells] : s.table->rows)
            {
                std::string row;
                for (const std::string& c : cells)
                    row += (row.empty() ? "" : " | ") + c;
                out << "table.row." << label << " = " << row << "\n";
            }
        }
    }
    return out.str();
}

inline Report parse_structured(std::string_view text)
{
    Report r;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line) || line != "gptlab-report 1")
        throw InputError("not a structured gptlab report", 1);
    ++lineno;
    Section* current = nullptr;
    while (std::getline(in, line))
    {
        ++lineno;
        if (line.empty())
            continue;
        if (line.front() == '[')
        {
            if (line.back() != ']')
                throw InputError("malformed section header", lineno);
            current = &r.add(line.substr(1, line.size() - 2));
            continue;
        }
        std::size_t eq = line.find(" = ");
        if (eq == std::string::npos)
            throw InputError("expected 'key = value'", lineno);
        std::string key = line.substr(0, eq), value = line.substr(eq + 3);
        if (!current)
        {
            if (key == "command")
                r.command = value;
            else if (key == "subject")
                r.subject = value;
            else
                throw InputError("unknown header key '" + key + "'", lineno);
            continue;
        }
        auto cells = [&](const std::string& v) {
            std::vector<std::string> out;
            for (std::string_view c : detail::split(v, '|'))
                out.emplace_back(c);
            return out;
        };
        if (key == "table.columns")
        {
            current->table = TextTable{cells(value), {}};
        }
        else if (key.rfind("table.row.", 0) == 0)
        {
            if (!current->table)
                throw InputError("table row before table.columns", lineno);
            current->table->rows.emplace_back(key.substr(10), cells(value));
        }
        else
            current->add(key, value);
    }
    return r;
}

/// Aligned human-readable rendering.
inline std::string to_human(const Report& r)
{
    std::ostringstream out;
    out << "gptlab " << r.command << " " << r.subject << "\n";
    for (const Section& s : r.sections)
    {
        out << "\n" << s.name << "\n";
        std::size_t width = 0;
        for (const auto& f : s.fields)
            width = std::max(width, f.first.size());
        for (const auto& [k, v] : s.fields)
            out << "  " << k << std::string(width - k.size() + 2, ' ') << v << "\n";
        if (s.table)
        {
            const TextTable& t = *s.table;
            std::size_t lw = 0;
            for (const auto& row : t.rows)
                lw = std::max(lw, row.first.size());
            std::vector<std::size_t> cw(t.columns.size());
            for (std::size_t j = 0; j < t.columns.size(); ++j)
            {
                cw[j] = t.columns[j].size();
                for (const auto& row : t.rows)
                    cw[j] = std::max(cw[j], row.second[j].size());
            }
            auto cell = [&](const std::string& c, std::size_t j) {
                out << " " << c;
                if (j + 1 < cw.size())
                    out << std::string(cw[j] - c.size(), ' ');
            };
            out << "  " << std::string(lw, ' ') << " |";
            for (std::size_t j = 0; j < t.columns.size(); ++j)
                cell(t.columns[j], j);
            out << "\n  " << std::string(lw + 1, '-') << "+";
            for (std::size_t j = 0; j < t.columns.size(); ++j)
                out << std::string(cw[j] + 1, '-');
            out << "\n";
            for (const auto& [label, cells] : t.rows)
            {
                out << "  " << label << std::string(lw - label.size(), ' ') << " |";
                for (std::size_t j = 0; j < cells.size(); ++j)
                    cell(cells[j], j);
                out << "\n";
            }
        }
    }
    return out.str();
}

struct CertificateCheck
{
    std::string section;
    std::string kind;
    bool ok;
    std::string message;
};

namespace detail {

inline Vec field_vector(const Section& s, const std::string& key)
{
    auto v = s.get(key);
    if (!v)
        throw InputError("section [" + s.name + "] lacks '" + key + "'");
    return parse_vector(*v);
}

inline std::vector<Vec> field_vectors(const Section& s, const std::string& key)
{
    std::vector<Vec> out;
    for (const std::string& v : s.indexed(key))
        out.push_back(parse_vector(v));
    return out;
}

inline Gpt theory_from_section(const Section& s)
{
    std::size_t dim = std::stoul(s.get("dimension").value_or("0"));
    std::vector<Labeled> effects, states;
    for (const auto& [k, v] : s.fields)
    {
        if (k.rfind("effect.", 0) == 0)
            effects.push_back({k.substr(7), parse_vector(v)});
        else if (k.rfind("state.", 0) == 0)
            states.push_back({k.substr(6), parse_vector(v)});
    }
    return Gpt(s.get("name").value_or("theory"), dim, field_vector(s, "unit"), effects, states, false);
}

inline bool check_certificate(const Report& r, const Section& s, const std::string& kind)
{
    if (kind == "model")
    {
        const Section* t = r.find(s.get("against").value_or(""));
        if (!t)
            throw InputError("model certificate refers to a missing theory section");
        OntModel m{field_vectors(s, "D"), field_vectors(s, "F")};
        return verify_ncom(m, theory_from_section(*t)).ok();
    }
    if (kind == "decomposition")
    {
        NonUniqueDecomposition w;
        w.normalizer = field_vector(s, "normalizer");
        w.point = field_vector(s, "point");
        std::vector<std::string> ls = s.indexed("label");
        std::vector<Vec> gs = field_vectors(s, "generator");
        if (ls.size() != gs.size())
            return false;
        for (std::size_t i = 0; i < gs.size(); ++i)
            w.generators.push_back({ls[i], gs[i]});
        auto it = std::find(ls.begin(), ls.end(), s.get("dependent").value_or(""));
        if (it == ls.end())
            return false;
        w.dependent = static_cast<std::size_t>(it - ls.begin());
        w.expansion = field_vector(s, "expansion").entries();
        w.first = field_vector(s, "first").entries();
        w.second = field_vector(s, "second").entries();
        return w.verify();
    }
    if (kind == "membership")
    {
        MembershipCertificate c;
        c.convex = s.get("convex") == "true";
        c.inside = s.get("inside") == "true";
        if (c.inside)
            c.coefficients = field_vector(s, "coefficients").entries();
        else
        {
            c.separator = field_vector(s, "separator");
            auto off = parse_rational(s.get("offset").value_or(""));
            if (!off)
                return false;
            c.offset = *off;
        }
        return c.verify(field_vector(s, "query"), field_vectors(s, "generator"));
    }
    if (kind == "farkas")
    {
        EmbedLpResult lp;
        lp.state_dual_rays = field_vectors(s, "h");
        lp.effect_dual_points = field_vectors(s, "r");
        lp.farkas = field_vector(s, "Y").entries();
        return lp.verify_farkas();
    }
    if (kind == "indistinguishable")
    {
        IndistinguishablePair p;
        p.first = field_vector(s, "first");
        p.second = field_vector(s, "second");
        p.direction = field_vector(s, "direction");
        std::vector<Vec> rows = field_vectors(s, "response");
        p.responses = Mat(rows, p.first.dim());
        return p.verify();
    }
    throw InputError("unknown certificate kind '" + kind + "'");
}

}   // namespace detail

/// Re-checks every embedded certificate using only the report's contents.
inline std::vector<CertificateCheck> verify_report(const Report& r)
{
    std::vector<CertificateCheck> out;
    for (const Section& s : r.sections)
    {
        auto kind = s.get("certificate");
        if (!kind)
            continue;
        CertificateCheck c{s.name, *kind, false, {}};
        try
        {
            c.ok = detail::check_certificate(r, s, *kind);
            if (!c.ok)
                c.message = "certificate does not verify";
        }
        catch (const std::exception& e)
        {
            c.message = e.what();
        }
        out.push_back(std::move(c));
    }
    return out;
}

}   // namespace gptlab

#endif

// Acceptance suite: one PASS/FAIL line per criterion, exact comparisons only.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gptlab/gptlab.hpp"
#include "support/properties.hpp"

namespace {

using namespace gptlab;

const Rational half(1, 2);

struct Check
{
    std::vector<std::string> failures;

    void require(bool cond, const std::string& what)
    {
        if (!cond)
            failures.push_back(what);
    }
};

Mat literal(const std::vector<std::vector<Rational>>& rows)
{
    std::vector<Vec> vs;
    for (const auto& r : rows)
        vs.emplace_back(r);
    return Mat(vs);
}

// Literal tables, entered by hand.
Mat t_spekkens()
{
    return literal({{1, 0, half, half, half, half},
                    {0, 1, half, half, half, half},
                    {half, half, 1, 0, half, half},
                    {half, half, 0, 1, half, half},
                    {half, half, half, half, 1, 0},
                    {half, half, half, half, 0, 1}});
}

Mat t_rebit()
{
    return literal({{1, 0, half, half}, {0, 1, half, half}, {half, half, 1, 0}, {half, half, 0, 1}});
}

const Vec t_mm{half, half, half, half};

// Cofactor determinant, independent of the elimination routines.
Rational det(const std::vector<std::vector<Rational>>& m)
{
    const std::size_t n = m.size();
    if (n == 1)
        return m[0][0];
    Rational total = 0;
    for (std::size_t j = 0; j < n; ++j)
    {
        if (m[0][j] == 0)
            continue;
        std::vector<std::vector<Rational>> minor;
        for (std::size_t i = 1; i < n; ++i)
        {
            std::vector<Rational> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j)
                    row.push_back(m[i][k]);
            minor.push_back(row);
        }
        Rational term = m[0][j] * det(minor);
        total += (j % 2 == 0) ? term : Rational(-term);
    }
    return total;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
    do
    {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i)
            if (pick[i])
                s.push_back(i);
        out.push_back(s);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

// Rank by minors: the largest k with a nonzero k x k minor.
std::size_t rank_by_minors(const Mat& m)
{
    std::size_t best = 0;
    for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k)
    {
        bool nonzero = false;
        for (const auto& rs : subsets(m.rows(), k))
        {
            for (const auto& cs : subsets(m.cols(), k))
            {
                std::vector<std::vector<Rational>> sub;
                for (std::size_t i : rs)
                {
                    std::vector<Rational> row;
                    for (std::size_t j : cs)
                        row.push_back(m(i, j));
                    sub.push_back(row);
                }
                if (det(sub) != 0)
                {
                    nonzero = true;
                    break;
                }
            }
            if (nonzero)
                break;
        }
        if (!nonzero)
            return best;
        best = k;
    }
    return best;
}

// Sum over ontic points computed directly from the frames.
Rational modelled(const OntModel& m, const Vec& e, const Vec& s)
{
    Rational p = 0;
    for (std::size_t k = 0; k < m.ontic_size(); ++k)
        p += inner(m.effect_frame[k], s) * inner(e, m.state_frame[k]);
    return p;
}

Mat modelled_table(const OntModel& m, const Gpt& g)
{
    std::vector<Vec> rows;
    for (const Labeled& s : g.states())
    {
        std::vector<Rational> r;
        for (const Labeled& e : g.effects())
            r.push_back(modelled(m, e.vector, s.vector));
        rows.emplace_back(r);
    }
    return Mat(rows);
}

std::set<Vec> as_set(const std::vector<Vec>& v)
{
    return {v.begin(), v.end()};
}

std::set<Vec> primitive_set(const std::vector<Vec>& v)
{
    std::set<Vec> out;
    for (const Vec& x : v)
        out.insert(primitive(x));
    return out;
}

std::map<std::string, Rational> weights(const std::vector<Rational>& c, const std::vector<Labeled>& gens)
{
    std::map<std::string, Rational> out;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0)
            out[gens[i].label] = c[i];
    return out;
}

void criterion_1(Check& c)
{
    Gpt toy = load_example("spekkens_toy");
    Gpt rebit = load_example("rebit");
    c.require(probability_table(toy).entries == t_spekkens(), "toy table differs from T_Spekkens");
    c.require(probability_table(rebit).entries == t_rebit(), "rebit table differs from T_rebit");
    Vec mm{0, 0, half};
    std::vector<Rational> row;
    for (const Labeled& e : rebit.effects())
        row.push_back(probability(e.vector, mm));
    c.require(Vec(row) == t_mm, "maximally mixed rebit row differs from T_mm");
    for (const Vec& row : probability_table(toy).entries.row_vectors())
        for (const Rational& x : row)
            c.require(x == 0 || x == half || x == 1, "toy table entry outside {0, 1/2, 1}");
}

void criterion_2(Check& c)
{
    ProbabilityTable toy = probability_table(load_example("spekkens_toy"));
    ProbabilityTable rebit = probability_table(load_example("rebit"));
    c.require(rank_by_minors(t_spekkens()) == 4, "oracle rank of T_Spekkens is not 4");
    c.require(rank_by_minors(t_rebit()) == 3, "oracle rank of T_rebit is not 3");
    c.require(rank(toy.entries) == 4, "rank(T_Spekkens) != 4");
    c.require(rank(rebit.entries) == 3, "rank(T_rebit) != 3");
    c.require(min_model_dimension(toy) == 4, "min_model_dimension(toy) != 4");
    c.require(min_model_dimension(rebit) == 3, "min_model_dimension(rebit) != 3");
}

void criterion_3(Check& c)
{
    Gpt r = load_example("rebit_completion");
    Cone effects = Cone::from_rays(3, r.effect_vectors());
    std::vector<Vec> doubled;
    for (const Labeled& s : r.states())
        doubled.push_back(Rational(2) * s.vector);
    c.require(r.states().size() == 4, "rebit_completion does not carry s5..s8");
    c.require(primitive_set(dual_cone(effects).rays()) == primitive_set(doubled),
              "dual rays differ from {2 s5, 2 s6, 2 s7, 2 s8}");
    // Each claimed ray is tight on exactly two effects and nonnegative on all.
    for (const Vec& v : doubled)
    {
        int tight = 0;
        for (const Vec& e : r.effect_vectors())
        {
            c.require(inner(e, v) >= 0, "claimed dual ray negative on an effect");
            tight += inner(e, v) == 0;
        }
        c.require(tight == 2, "claimed dual ray not tight on two effects");
    }
}

void criterion_4(Check& c)
{
    Gpt container = load_example("spekkens_container");
    ContextualityVerdict v = classify(container);
    c.require(v.noncontextual, "container not classified noncontextual");
    if (v.model)
    {
        std::vector<Vec> zeta, eta;
        for (int i = 1; i <= 4; ++i)
        {
            zeta.push_back(*container.effect("zeta" + std::to_string(i)));
            eta.push_back(container.states()[static_cast<std::size_t>(i - 1)].vector);
        }
        c.require(v.model->effect_frame == zeta, "F differs from zeta1..zeta4");
        c.require(v.model->state_frame == eta, "D differs from eta1..eta4");
        c.require(verify_ncom(*v.model, container).ok(), "Dirac model fails verify_ncom");
        c.require(modelled_table(*v.model, container) == probability_table(container).entries,
                  "Dirac model does not reproduce the container statistics");
    }
    else
        c.require(false, "no Dirac model returned");

    Gpt rc = load_example("rebit_completion");
    ContextualityVerdict w = classify(rc);
    c.require(!w.noncontextual, "rebit_completion not classified contextual");
    c.require(w.state_witness && w.state_witness->verify(), "no verified decomposition witness");
}

void criterion_5(Check& c)
{
    Gpt toy = load_example("spekkens_toy");
    ExactDimResult r = embed_exact_dim(toy);
    if (!r.model)
    {
        c.require(false, "no exact-dimension model found");
        return;
    }
    c.require(r.model->ontic_size() == 4, "model does not have 4 ontic points");
    c.require(verify_ncom(*r.model, toy).ok(), "model fails verify_ncom");
    c.require(modelled_table(*r.model, toy) == t_spekkens(), "model does not reproduce T_Spekkens");
}

std::size_t choose(std::size_t n, std::size_t k)
{
    return k > n ? 0 : subsets(n, k).size();
}

void criterion_6(Check& c)
{
    Gpt rebit = load_example("rebit");
    ExactDimResult ex = embed_exact_dim(rebit);
    c.require(!ex.model, "exact-dimension search found a model");
    std::size_t hs = dual_cone(state_cone(rebit)).rays().size();
    std::size_t rs = dual_cone(effect_cone(rebit)).rays().size();
    c.require(ex.explored == choose(hs, 3) + choose(rs, 3), "candidate class not fully explored");

    EmbedLpResult lp = embed_lp(rebit);
    if (!lp.model)
    {
        c.require(false, "LP found no model");
        return;
    }
    std::vector<Vec> corners{{half, half, half}, {-half, half, half}, {half, -half, half}, {-half, -half, half}};
    c.require(lp.model->ontic_size() == 4, "LP model does not have 4 ontic points");
    c.require(as_set(lp.model->state_frame) == as_set(corners), "D differs from {s5..s8}");
    c.require(as_set(lp.model->effect_frame) == as_set(corners), "F differs from {s5..s8}");
    c.require(outer_sum(lp.model->state_frame, lp.model->effect_frame) == Mat::identity(3), "sum D F^T != Id3");
    c.require(verify_ncom(*lp.model, rebit).ok(), "LP model fails verify_ncom");
    c.require(modelled_table(*lp.model, rebit) == t_rebit(), "LP model does not reproduce T_rebit");

    Report rep = analyze(load_example_file("rebit"));
    const Section* e = rep.find("exact-dim-embedding");
    const Section* l = rep.find("lp-embedding");
    c.require(e && e->get("result") == "none-found", "report lacks the none-found exact-dimension result");
    c.require(l && l->get("result") == "found" && l->get("exceeds_dimension") == "true",
              "report lacks the higher-cardinality LP model");
}

void criterion_7(Check& c)
{
    Gpt rebit = load_example("rebit");
    EmbedLpResult lp = embed_lp(rebit);
    if (!lp.model)
    {
        c.require(false, "LP found no model");
        return;
    }
    auto p = indistinguishability_witness(rebit, *lp.model);
    if (!p)
    {
        c.require(false, "no indistinguishable pair");
        return;
    }
    c.require(p->verify(), "pair fails its own verification");
    Vec uniform{Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)};
    c.require(p->second == uniform || p->first == uniform, "neither distribution is uniform");

    // Position of each corner in the model fixes the literal null direction.
    std::vector<Vec> corners{{half, half, half}, {-half, half, half}, {half, -half, half}, {-half, -half, half}};
    std::vector<std::size_t> pos;
    for (const Vec& v : corners)
        pos.push_back(static_cast<std::size_t>(
            std::find(lp.model->state_frame.begin(), lp.model->state_frame.end(), v) - lp.model->state_frame.begin()));
    // (1, -1, -1, 1) over s5, s6, s7, s8.
    std::vector<Rational> dir(4);
    const Rational signs[4] = {1, -1, -1, 1};
    for (std::size_t i = 0; i < 4; ++i)
        if (pos[i] < 4)
            dir[pos[i]] = signs[i];
    Vec diff = p->first - p->second;
    c.require(!diff.is_zero() && rank(std::vector<Vec>{diff, Vec(dir)}) == 1,
              "difference does not span the null direction (1,-1,-1,1)");
    std::vector<Rational> star(4);
    for (std::size_t i = 0; i < 4; ++i)
        if (pos[i] < 4 && (i == 0 || i == 3))
            star[pos[i]] = half;
    Vec eta_star(star);
    c.require(rank(std::vector<Vec>{eta_star - uniform, diff}) == 1, "eta* - eta_mm not along the witness direction");

    // Statistics from the raw frames: response of effect e at point k is <e, D_k>.
    for (const Vec& dist : {p->first, p->second, eta_star})
    {
        std::vector<Rational> row;
        for (const Labeled& e : rebit.effects())
        {
            Rational q = 0;
            for (std::size_t k = 0; k < 4; ++k)
                q += dist[k] * inner(e.vector, lp.model->state_frame[k]);
            row.push_back(q);
        }
        c.require(Vec(row) == t_mm, "distribution does not reproduce T_mm");
    }
}

void criterion_8(Check& c)
{
    Gpt rc = load_example("rebit_completion");
    std::vector<Labeled> gens = rc.states();
    auto w = nonunique_decomposition(gens, rc.unit());
    if (!w)
    {
        c.require(false, "no decomposition witness");
        return;
    }
    c.require(w->verify(), "witness fails verification");
    c.require(w->point == (Vec{0, 0, half}), "witness point is not (0,0,1/2)");
    std::set<std::map<std::string, Rational>> got{weights(w->first, w->generators), weights(w->second, w->generators)};
    std::set<std::map<std::string, Rational>> want{{{"s5", half}, {"s8", half}}, {{"s6", half}, {"s7", half}}};
    c.require(got == want, "decompositions are not (s5+s8)/2 and (s6+s7)/2");
    const Vec s5 = gens[0].vector, s6 = gens[1].vector, s7 = gens[2].vector, s8 = gens[3].vector;
    c.require(half * s5 + half * s8 == (Vec{0, 0, half}), "oracle: (s5+s8)/2 != (0,0,1/2)");
    c.require(half * s6 + half * s7 == (Vec{0, 0, half}), "oracle: (s6+s7)/2 != (0,0,1/2)");

    Report rep = parse_structured(to_structured(decomposition_report(rc)));
    for (const CertificateCheck& chk : verify_report(rep))
        c.require(chk.ok, "report certificate " + chk.section + " fails re-verification");
}

void criterion_9(Check& c)
{
    Gpt trit = load_example("classical_trit");
    ResourceVerdict uni = classify_bonus(trit, {BonusKind::effect, Vec{half, half, half}, "b"});
    c.require(uni.classification == ResourceClass::classical, "(1/2,1/2,1/2) not classical");
    c.require(!uni.contextual_extension.holds && !uni.nonclassical_resource.holds && !uni.overcomplete.holds
                  && !uni.outside_in_span.holds,
              "(1/2,1/2,1/2): some condition true");

    BonusElement skew{BonusKind::effect, Vec{Rational(3, 2), 0, -half}, "b"};
    ResourceVerdict v = classify_bonus(trit, skew);
    c.require(v.classification == ResourceClass::nonclassical, "(3/2,0,-1/2) not nonclassical");
    c.require(v.contextual_extension.holds && v.overcomplete.holds && v.outside_in_span.holds,
              "(3/2,0,-1/2): conditions (i), (iii), (iv) not all true");
    c.require(v.nonclassical_resource.holds == v.contextual_extension.holds, "(ii) disagrees with (i)");
    c.require(v.decomposition && v.decomposition->verify(), "(iii) evidence does not verify");
    c.require(v.exclusion && !v.exclusion->inside && v.exclusion->verify(skew.vector, trit.effect_vectors()),
              "(iv) evidence does not verify");
    // Oracle for (iv): <b, (0,0,1)> = -1/2 < 0 while every trit effect is nonnegative on (0,0,1).
    c.require(inner(skew.vector, Vec{0, 0, 1}) < 0, "oracle: b nonnegative on s3");

    ResourceVerdict up = classify_bonus(load_example("classical_bit"), {BonusKind::effect, Vec{0, 0, 1}, "b"});
    c.require(up.classification == ResourceClass::dimension_raising, "out-of-span bonus not dimension-raising");
}

void criterion_10(Check& c)
{
    std::size_t cases = 0;
    for (const props::PropertyResult& r : props::run_all(20261014, 120))
    {
        cases += r.cases;
        c.require(r.failures == 0, r.name + ": " + std::to_string(r.failures) + " failure(s), " + r.first_failure);
    }
    c.require(cases >= 1000, "only " + std::to_string(cases) + " cases generated");
}

}   // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
        {"probability tables equal T_Spekkens, T_rebit and T_mm", criterion_1},
        {"table ranks 4 and 3 and matching model-dimension bounds", criterion_2},
        {"dual of the rebit effect cone is spanned by 2 s5..2 s8", criterion_3},
        {"container noncontextual with Dirac model, rebit completion contextual with witness", criterion_4},
        {"toy theory has a verified 4-point model reproducing T_Spekkens", criterion_5},
        {"rebit: no exact-dimension model, LP model on s5..s8 reproducing T_rebit", criterion_6},
        {"rebit indistinguishable ontic distributions eta* and eta_mm", criterion_7},
        {"square centre (0,0,1/2) has decompositions (s5+s8)/2 and (s6+s7)/2", criterion_8},
        {"trit bonus effects classical, nonclassical and dimension-raising", criterion_9},
        {"randomized property suites, zero failures over at least 1000 cases", criterion_10},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i)
    {
        Check c;
        auto start = std::chrono::steady_clock::now();
        try
        {
            criteria[i].second(c);
        }
        catch (const std::exception& e)
        {
            c.failures.push_back(std::string("exception: ") + e.what());
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
        bool ok = c.failures.empty();
        failed += !ok;
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ("
                  << ms.count() << " ms)\n";
        for (const std::string& f : c.failures)
            std::cout << "    " << f << "\n";
    }
    std::cout << criteria.size() - static_cast<std::size_t>(failed) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}

// Command-line front end: gptlab <command> <theory> [options]
//
// A theory is either a path to a theory file or the name of a bundled
// example. Exit status: 0 analysis done, 1 input error, 2 internal error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gptlab/gptlab.hpp"

namespace {

using namespace gptlab;

TheoryFile resolve(const std::string& arg)
{
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec))
        return load_theory_file(arg);
    if (find_example(arg))
        return load_example_file(arg);
    throw InputError("'" + arg + "' is neither a readable file nor a bundled example (see 'gptlab examples list')");
}

int emit(const Report& r, const std::string& format, bool verify)
{
    std::cout << (format == "structured" ? to_structured(r) : to_human(r));
    if (!verify)
        return 0;
    // Round-trip through the structured form so the check sees only text.
    Report back = parse_structured(to_structured(r));
    std::vector<CertificateCheck> checks = verify_report(back);
    bool ok = true;
    std::cout << "\nverify\n";
    for (const CertificateCheck& c : checks)
    {
        std::cout << "  " << (c.ok ? "ok    " : "FAILED") << " " << c.section << " (" << c.kind << ")";
        if (!c.message.empty())
            std::cout << ": " << c.message;
        std::cout << "\n";
        ok = ok && c.ok;
    }
    std::cout << "  " << checks.size() << " certificate(s), " << (ok ? "all verified" : "verification failed")
              << "\n";
    return ok ? 0 : 2;
}

}   // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact contextuality analysis of generalized probabilistic theories"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "human";
    bool verify = false;
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"human", "structured"}))
        ->capture_default_str();
    app.add_flag("--verify", verify, "Re-check every certificate in the report");

    std::string theory;
    auto with_theory = [&](CLI::App* sub) { sub->add_option("theory", theory, "Theory file or bundled example")->required(); };

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "Full analysis of a theory");
    with_theory(analyze_cmd);

    CLI::App* table_cmd = app.add_subcommand("table", "Probability table of the generators");
    with_theory(table_cmd);

    CLI::App* complete_cmd = app.add_subcommand("complete", "Complete a subtheory under the no-restriction hypothesis");
    with_theory(complete_cmd);
    std::string mode;
    std::string output;
    complete_cmd->add_option("--mode", mode, "Side kept fixed: 'effects' recomputes the states, 'states' the effects")
        ->required()
        ->check(CLI::IsMember({"states", "effects"}));
    complete_cmd->add_option("-o,--output", output, "Also write the completed theory file here");

    CLI::App* embed_cmd = app.add_subcommand("embed", "Search for an ontological model");
    with_theory(embed_cmd);
    bool exact_dim = false;
    embed_cmd->add_flag("--exact-dim", exact_dim, "Restrict to models with as many ontic states as the dimension");

    CLI::App* witness_cmd = app.add_subcommand("witness", "Contextuality witnesses");
    with_theory(witness_cmd);
    bool decompositions = false, indist = false;
    auto* l2 = witness_cmd->add_flag("--lemma2", decompositions, "Non-unique convex decompositions");
    auto* ind = witness_cmd->add_flag("--indistinguishable", indist, "Indistinguishable ontic distributions");
    l2->excludes(ind);

    CLI::App* resource_cmd = app.add_subcommand("classify-resource", "Classify a bonus effect or state");
    with_theory(resource_cmd);
    std::string effect, state, label = "b";
    auto* eo = resource_cmd->add_option("--effect", effect, "Bonus effect, e.g. \"3/2,0,-1/2\"");
    auto* so = resource_cmd->add_option("--state", state, "Bonus state");
    eo->excludes(so);
    resource_cmd->add_option("--label", label, "Label of the bonus element")->capture_default_str();

    CLI::App* examples_cmd = app.add_subcommand("examples", "Bundled example theories");
    examples_cmd->require_subcommand(1);
    CLI::App* list_cmd = examples_cmd->add_subcommand("list", "List bundled examples");
    CLI::App* export_cmd = examples_cmd->add_subcommand("export", "Print a bundled example as a theory file");
    std::string example;
    export_cmd->add_option("name", example, "Example name")->required();

    CLI::App* verify_cmd = app.add_subcommand("verify", "Re-check the certificates of a structured report file");
    std::string report_path;
    verify_cmd->add_option("report", report_path, "Structured report")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try
    {
        if (*analyze_cmd)
            return emit(analyze(resolve(theory)), format, verify);
        if (*table_cmd)
            return emit(table_report(resolve(theory).theory), format, verify);
        if (*complete_cmd)
        {
            Gpt g = resolve(theory).theory;
            CompletionMode m = mode == "effects" ? CompletionMode::fix_effects : CompletionMode::fix_states;
            if (!output.empty())
            {
                std::ofstream out(output);
                out << serialize(complete(g, m));
                if (!out)
                    throw InputError("cannot write '" + output + "'");
            }
            return emit(complete_report(g, m), format, verify);
        }
        if (*embed_cmd)
            return emit(embed_report(resolve(theory).theory, exact_dim), format, verify);
        if (*witness_cmd)
        {
            if (!decompositions && !indist)
                throw InputError("witness needs --lemma2 or --indistinguishable");
            Gpt g = resolve(theory).theory;
            return emit(decompositions ? decomposition_report(g) : indistinguishable_report(g), format, verify);
        }
        if (*resource_cmd)
        {
            TheoryFile f = resolve(theory);
            std::vector<BonusElement> bonus;
            if (!effect.empty())
                bonus.push_back({BonusKind::effect, parse_vector(effect), label});
            else if (!state.empty())
                bonus.push_back({BonusKind::state, parse_vector(state), label});
            else
                bonus = f.bonus;
            return emit(resource_report(f.theory, bonus), format, verify);
        }
        if (*examples_cmd)
        {
            if (*list_cmd)
            {
                for (const CorpusEntry& e : corpus())
                {
                    std::string name(e.name);
                    if (!e.alias.empty())
                        name += " (" + std::string(e.alias) + ")";
                    std::cout << name << std::string(name.size() < 28 ? 28 - name.size() : 1, ' ') << e.description
                              << "\n";
                }
                return 0;
            }
            const CorpusEntry* e = find_example(example);
            if (!e)
                throw InputError("no bundled example named '" + example + "'");
            std::cout << e->text;
            return 0;
        }
        if (*verify_cmd)
        {
            Report r = parse_structured(read_file(report_path));
            bool ok = true;
            std::vector<CertificateCheck> checks = verify_report(r);
            for (const CertificateCheck& c : checks)
            {
                std::cout << (c.ok ? "ok     " : "FAILED ") << c.section << " (" << c.kind << ")";
                if (!c.message.empty())
                    std::cout << ": " << c.message;
                std::cout << "\n";
                ok = ok && c.ok;
            }
            std::cout << checks.size() << " certificate(s), " << (ok ? "all verified" : "verification failed") << "\n";
            return ok ? 0 : 2;
        }
    }
    catch (const InternalError& e)
    {
        std::cerr << "gptlab: internal error: " << e.what() << "\n";
        return 2;
    }
    catch (const Error& e)
    {
        std::cerr << "gptlab: " << e.what() << "\n";
        return 1;
    }
    catch (const std::exception& e)
    {
        std::cerr << "gptlab: internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

/**
 * Plain-text theory files.
 *
 *     # comment
 *     name: rebit
 *     dimension: 3
 *     unit: [0, 0, 2]
 *     no_restriction: false
 *     effects:
 *       e1 = [1, 0, 1]
 *     states:
 *       s1 = [1/2, 0, 1/2]
 *     pvvms:
 *       m1 = {e1, e2}
 *     bonus:
 *       effect b = [3/2, 0, -1/2]
 */

#ifndef GPTLAB_IO_HPP
#define GPTLAB_IO_HPP

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "gpt.hpp"
#include "linalg.hpp"
#include "resources.hpp"

namespace gptlab {

/// Ambient dimension cap, from GPTLAB_MAX_DIM (default 10).
inline std::size_t max_dimension()
{
    if (const char* env = std::getenv("GPTLAB_MAX_DIM"))
    {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return v;
    }
    return 10;
}

struct TheoryFile
{
    Gpt theory;
    std::vector<BonusElement> bonus;

    friend bool operator==(const TheoryFile&, const TheoryFile&) = default;
};

namespace detail {

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i)
        if (i == s.size() || s[i] == sep)
        {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    return out;
}

inline bool valid_label(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (std::isspace(static_cast<unsigned char>(c)) || c == '=' || c == ',' || c == '[' || c == ']' || c == '{'
            || c == '}' || c == '#')
            return false;
    return true;
}

}   // namespace detail

/**
 * A comma-separated list of rationals, optionally enclosed in brackets.
 * Throws InputError naming the offending entry.
 */
inline Vec parse_vector(std::string_view text, std::size_t line = 0)
{
    std::string_view s = detail::trim(text);
    if (!s.empty() && s.front() == '[')
    {
        if (s.back() != ']')
            throw InputError("unterminated vector '" + std::string(text) + "'", line);
        s = s.substr(1, s.size() - 2);
    }
    if (detail::trim(s).empty())
        throw InputError("empty vector", line);
    std::vector<Rational> out;
    std::size_t index = 0;
    for (std::string_view part : detail::split(s, ','))
    {
        ++index;
        auto r = parse_rational(part);
        if (!r)
            throw InputError("entry " + std::to_string(index) + " '" + std::string(part) + "' is not a rational",
                             line);
        out.push_back(*r);
    }
    return Vec(std::move(out));
}

/// Parses a theory file and checks that the theory validates.
inline TheoryFile parse_theory_file(std::string_view text)
{
    enum class Section
    {
        none,
        effects,
        states,
        pvvms,
        bonus
    };
    Section section = Section::none;
    std::optional<std::string> name;
    std::optional<std::size_t> dim;
    std::optional<Vec> unit;
    std::size_t dim_line = 0;
    bool no_restriction = false;
    std::vector<Labeled> effects, states;
    std::vector<Pvvm> pvvms;
    std::vector<BonusElement> bonus;
    std::map<std::string, std::size_t> where;   // label -> line
    std::size_t section_line[5] = {};

    auto need_dim = [&](std::size_t line) {
        if (!dim)
            throw InputError("'dimension:' must precede vectors", line);
        return *dim;
    };
    auto vector_of_dim = [&](std::string_view body, std::size_t line, const std::string& what) {
        Vec v = parse_vector(body, line);
        if (v.dim() != need_dim(line))
            throw InputError(what + ": " + std::to_string(v.dim()) + " entries, dimension is "
                                 + std::to_string(*dim),
                             line);
        return v;
    };
    auto new_label = [&](std::string_view label, std::size_t line) {
        if (!detail::valid_label(label))
            throw InputError("invalid label '" + std::string(label) + "'", line);
        if (!where.emplace(std::string(label), line).second)
            throw InputError("duplicate label '" + std::string(label) + "' (first on line "
                                 + std::to_string(where[std::string(label)]) + ")",
                             line);
        return std::string(label);
    };

    std::size_t lineno = 0;
    std::istringstream in{std::string(text)};
    for (std::string raw; std::getline(in, raw);)
    {
        ++lineno;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty())
            continue;

        std::size_t colon = line.find(':');
        std::size_t eq = line.find('=');
        if (colon != std::string_view::npos && (eq == std::string_view::npos || colon < eq))
        {
            std::string key(detail::trim(line.substr(0, colon)));
            std::string_view value = detail::trim(line.substr(colon + 1));
            static const std::map<std::string, Section> sections{
                {"effects", Section::effects}, {"states", Section::states}, {"pvvms", Section::pvvms},
                {"bonus", Section::bonus}};
            if (auto it = sections.find(key); it != sections.end())
            {
                if (!value.empty())
                    throw InputError("section header '" + key + ":' takes no value", lineno);
                section = it->second;
                section_line[static_cast<int>(section)] = lineno;
                continue;
            }
            if (section != Section::none)
                throw InputError("key '" + key + "' inside a section; keys go before 'effects:'", lineno);
            if (key == "name")
            {
                if (!detail::valid_label(value))
                    throw InputError("invalid theory name '" + std::string(value) + "'", lineno);
                name = std::string(value);
            }
            else if (key == "dimension")
            {
                char* end = nullptr;
                std::string v(value);
                unsigned long d = std::strtoul(v.c_str(), &end, 10);
                if (v.empty() || *end != '\0' || d == 0 || v.front() == '-')
                    throw InputError("dimension '" + v + "' is not a positive integer", lineno);
                if (d > max_dimension())
                    throw InputError("dimension " + v + " exceeds GPTLAB_MAX_DIM = " + std::to_string(max_dimension()),
                                     lineno);
                dim = d;
                dim_line = lineno;
            }
            else if (key == "unit")
                unit = vector_of_dim(value, lineno, "unit");
            else if (key == "no_restriction")
            {
                if (value == "true")
                    no_restriction = true;
                else if (value == "false")
                    no_restriction = false;
                else
                    throw InputError("no_restriction must be 'true' or 'false'", lineno);
            }
            else
                throw InputError("unknown key '" + key + "'", lineno);
            continue;
        }

        if (eq == std::string_view::npos)
            throw InputError("expected 'label = value'", lineno);
        std::string_view lhs = detail::trim(line.substr(0, eq));
        std::string_view rhs = detail::trim(line.substr(eq + 1));
        switch (section)
        {
            case Section::none:
                throw InputError("entry outside a section", lineno);
            case Section::effects:
            {
                std::string label = new_label(lhs, lineno);
                effects.push_back({label, vector_of_dim(rhs, lineno, "effect '" + label + "'")});
                break;
            }
            case Section::states:
            {
                std::string label = new_label(lhs, lineno);
                states.push_back({label, vector_of_dim(rhs, lineno, "state '" + label + "'")});
                break;
            }
            case Section::pvvms:
            {
                std::string label = new_label(lhs, lineno);
                if (rhs.size() < 2 || rhs.front() != '{' || rhs.back() != '}')
                    throw InputError("measurement '" + label + "' must be written {a, b, ...}", lineno);
                Pvvm p{label, {}};
                for (std::string_view o : detail::split(rhs.substr(1, rhs.size() - 2), ','))
                {
                    if (std::none_of(effects.begin(), effects.end(), [&](const Labeled& e) { return e.label == o; }))
                        throw InputError("measurement '" + label + "' names unknown effect '" + std::string(o) + "'",
                                         lineno);
                    p.outcomes.emplace_back(o);
                }
                pvvms.push_back(std::move(p));
                break;
            }
            case Section::bonus:
            {
                std::string_view head = lhs;
                std::size_t sp = head.find_first_of(" \t");
                if (sp == std::string_view::npos)
                    throw InputError("bonus entry must be 'effect|state label = vector'", lineno);
                std::string_view kind = head.substr(0, sp);
                std::string label = new_label(detail::trim(head.substr(sp)), lineno);
                BonusElement b;
                if (kind == "effect")
                    b.kind = BonusKind::effect;
                else if (kind == "state")
                    b.kind = BonusKind::state;
                else
                    throw InputError("bonus kind '" + std::string(kind) + "' is neither effect nor state", lineno);
                b.label = label;
                b.vector = parse_vector(rhs, lineno);
                if (b.vector.dim() < need_dim(lineno))
                    throw InputError("bonus '" + label + "' has fewer entries than the dimension", lineno);
                if (b.vector.is_zero())
                    throw InputError("bonus '" + label + "' is the zero vector", lineno);
                bonus.push_back(std::move(b));
                break;
            }
        }
    }

    if (!dim)
        throw InputError("missing 'dimension:'", lineno);
    if (!unit)
        throw InputError("missing 'unit:'", dim_line);
    if (effects.empty())
        throw InputError("no effects given", section_line[static_cast<int>(Section::effects)]);
    if (states.empty())
        throw InputError("no states given", section_line[static_cast<int>(Section::states)]);

    Gpt g(name.value_or("theory"), *dim, *unit, effects, states, no_restriction, pvvms);
    ValidationReport rep = validate(g);
    if (!rep.ok())
    {
        const Violation& v = rep.violations.front();
        std::size_t line = 0;
        if (auto it = where.find(v.subject); it != where.end())
            line = it->second;
        else if (v.invariant == "effects-span")
            line = section_line[static_cast<int>(Section::effects)];
        else if (v.invariant == "states-span")
            line = section_line[static_cast<int>(Section::states)];
        throw InputError(v.invariant + ": " + v.witness, line);
    }
    return TheoryFile{std::move(g), std::move(bonus)};
}

inline Gpt parse(std::string_view text)
{
    return parse_theory_file(text).theory;
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline TheoryFile load_theory_file(const std::string& path)
{
    try
    {
        return parse_theory_file(read_file(path));
    }
    catch (const InputError& e)
    {
        throw InputError(path + ": " + e.what());
    }
}

inline std::string serialize(const Gpt& g, const std::vector<BonusElement>& bonus = {})
{
    std::ostringstream out;
    out << "name: " << g.name() << "\n";
    out << "dimension: " << g.dim() << "\n";
    out << "unit: " << to_string(g.unit()) << "\n";
    out << "no_restriction: " << (g.asserts_no_restriction() ? "true" : "false") << "\n";
    out << "effects:\n";
    for (const Labeled& e : g.effects())
        out << "  " << e.label << " = " << to_string(e.vector) << "\n";
    out << "states:\n";
    for (const Labeled& s : g.states())
        out << "  " << s.label << " = " << to_string(s.vector) << "\n";
    if (!g.pvvms().empty())
    {
        out << "pvvms:\n";
        for (const Pvvm& p : g.pvvms())
        {
            out << "  " << p.label << " = {";
            for (std::size_t i = 0; i < p.outcomes.size(); ++i)
                out << (i ? ", " : "") << p.outcomes[i];
            out << "}\n";
        }
    }
    if (!bonus.empty())
    {
        out << "bonus:\n";
        for (const BonusElement& b : bonus)
            out << "  " << to_string(b.kind) << " " << b.label << " = " << to_string(b.vector) << "\n";
    }
    return out.str();
}

inline std::string serialize(const TheoryFile& f)
{
    return serialize(f.theory, f.bonus);
}

}   // namespace gptlab

#endif

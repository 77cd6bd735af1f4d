/**
 * The bundled example theories, stored in the theory file format.
 */

#ifndef GPTLAB_CORPUS_HPP
#define GPTLAB_CORPUS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "io.hpp"

namespace gptlab {

struct CorpusEntry
{
    std::string_view name;
    std::string_view alias;
    std::string_view description;
    std::string_view text;
};

inline const std::vector<CorpusEntry>& corpus()
{
    static const std::vector<CorpusEntry> entries{
        {"classical_bit", "bit", "classical bit: simplex with two pure states",
         R"(name: classical_bit
dimension: 2
unit: [1, 1]
no_restriction: true
effects:
  e1 = [1, 0]
  e2 = [0, 1]
states:
  s1 = [1, 0]
  s2 = [0, 1]
pvvms:
  m = {e1, e2}
)"},
        {"classical_trit", "trit", "classical trit: simplex with three pure states",
         R"(name: classical_trit
dimension: 3
unit: [1, 1, 1]
no_restriction: true
effects:
  e1 = [1, 0, 0]
  e2 = [0, 1, 0]
  e3 = [0, 0, 1]
states:
  s1 = [1, 0, 0]
  s2 = [0, 1, 0]
  s3 = [0, 0, 1]
pvvms:
  m = {e1, e2, e3}
bonus:
  effect b = [3/2, 0, -1/2]
)"},
        {"spekkens_container", "", "ontic theory of one elementary system: simplex states, hypercube effects",
         R"(name: spekkens_container
dimension: 4
unit: [1, 1, 1, 1]
no_restriction: true
effects:
  zeta1 = [1, 0, 0, 0]
  zeta2 = [0, 1, 0, 0]
  zeta3 = [0, 0, 1, 0]
  zeta4 = [0, 0, 0, 1]
  zeta5 = [1, 1, 0, 0]
  zeta6 = [0, 0, 1, 1]
  zeta7 = [1, 0, 1, 0]
  zeta8 = [0, 1, 0, 1]
  zeta9 = [0, 1, 1, 0]
  zeta10 = [1, 0, 0, 1]
states:
  eta1 = [1, 0, 0, 0]
  eta2 = [0, 1, 0, 0]
  eta3 = [0, 0, 1, 0]
  eta4 = [0, 0, 0, 1]
  eta5 = [1/2, 1/2, 0, 0]
  eta6 = [0, 0, 1/2, 1/2]
  eta7 = [1/2, 0, 1/2, 0]
  eta8 = [0, 1/2, 0, 1/2]
  eta9 = [0, 1/2, 1/2, 0]
  eta10 = [1/2, 0, 0, 1/2]
pvvms:
  m0 = {zeta1, zeta2, zeta3, zeta4}
  m1 = {zeta5, zeta6}
  m2 = {zeta7, zeta8}
  m3 = {zeta9, zeta10}
)"},
        {"spekkens_toy", "", "Spekkens' toy theory: octahedral states and effects under knowledge balance",
         R"(name: spekkens_toy
dimension: 4
unit: [1, 1, 1, 1]
no_restriction: false
effects:
  zeta5 = [1, 1, 0, 0]
  zeta6 = [0, 0, 1, 1]
  zeta7 = [1, 0, 1, 0]
  zeta8 = [0, 1, 0, 1]
  zeta9 = [0, 1, 1, 0]
  zeta10 = [1, 0, 0, 1]
states:
  eta5 = [1/2, 1/2, 0, 0]
  eta6 = [0, 0, 1/2, 1/2]
  eta7 = [1/2, 0, 1/2, 0]
  eta8 = [0, 1/2, 0, 1/2]
  eta9 = [0, 1/2, 1/2, 0]
  eta10 = [1/2, 0, 0, 1/2]
pvvms:
  m1 = {zeta5, zeta6}
  m2 = {zeta7, zeta8}
  m3 = {zeta9, zeta10}
)"},
        {"rebit", "", "stabilizer rebit: |0>, |1>, |+>, |-> in three dimensions",
         R"(name: rebit
dimension: 3
unit: [0, 0, 2]
no_restriction: false
effects:
  e1 = [1, 0, 1]
  e2 = [-1, 0, 1]
  e3 = [0, 1, 1]
  e4 = [0, -1, 1]
states:
  s1 = [1/2, 0, 1/2]
  s2 = [-1/2, 0, 1/2]
  s3 = [0, 1/2, 1/2]
  s4 = [0, -1/2, 1/2]
pvvms:
  z = {e1, e2}
  x = {e3, e4}
)"},
        {"rebit_completion", "", "rebit effects with the full dual state space (a square)",
         R"(name: rebit_completion
dimension: 3
unit: [0, 0, 2]
no_restriction: true
effects:
  e1 = [1, 0, 1]
  e2 = [-1, 0, 1]
  e3 = [0, 1, 1]
  e4 = [0, -1, 1]
states:
  s5 = [1/2, 1/2, 1/2]
  s6 = [-1/2, 1/2, 1/2]
  s7 = [1/2, -1/2, 1/2]
  s8 = [-1/2, -1/2, 1/2]
pvvms:
  z = {e1, e2}
  x = {e3, e4}
)"},
    };
    return entries;
}

inline const CorpusEntry* find_example(std::string_view name)
{
    for (const CorpusEntry& e : corpus())
        if (e.name == name || (!e.alias.empty() && e.alias == name))
            return &e;
    return nullptr;
}

inline TheoryFile load_example_file(std::string_view name)
{
    const CorpusEntry* e = find_example(name);
    if (!e)
        throw InputError("no bundled example named '" + std::string(name) + "'");
    return parse_theory_file(e->text);
}

inline Gpt load_example(std::string_view name)
{
    return load_example_file(name).theory;
}

}   // namespace gptlab

#endif

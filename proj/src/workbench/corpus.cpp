#include "qlab/workbench/corpus.hpp"

#ifndef QLAB_CORPUS_FILE
#define QLAB_CORPUS_FILE "corpus/corpus.qlab"
#endif

namespace qlab {

std::vector<NamedGroupoid> corpus_groupoids() {
  return {
      {"trivial", pair_set_groupoid(1)},
      {"PAIR(2)", pair_set_groupoid(2)},
      {"PAIR(3)", pair_set_groupoid(3)},
      {"ZMOD2", cyclic_set_groupoid(2)},
      {"partition{0}{1}", partition_set_groupoid({{0}, {1}})},
      {"partition{0,1}{2}", partition_set_groupoid({{0, 1}, {2}})},
      {"partition{0}{1}{2}", partition_set_groupoid({{0}, {1}, {2}})},
  };
}

std::vector<NamedQuantale> corpus_quantales(bool large) {
  std::vector<NamedQuantale> out = {
      {"TWO", two_quantale()},
      {"Rel(1)", rel_quantale(1)},
      {"Rel(2)", rel_quantale(2)},
  };
  if (large) out.push_back({"Rel(3)", rel_quantale(3)});
  out.push_back({"Q1", example_q1()});
  out.push_back({"Q2", example_q2()});
  out.push_back({"retract", retract_example(2)});
  for (auto& g : corpus_groupoids())
    if (g.name != "PAIR(3)") out.push_back({"O(" + g.name + ")", groupoid_quantale(g.groupoid)});
  return out;
}

std::string corpus_file() { return QLAB_CORPUS_FILE; }

}  // namespace qlab

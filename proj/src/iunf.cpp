#include "epiupdate/iunf.hpp"

#include "epiupdate/comm.hpp"
#include "epiupdate/error.hpp"

namespace epi {

namespace {

/// t([P,R] h) for h already in normal form.
Formula push(const std::shared_ptr<const CommPattern>& pattern, std::size_t graph, const Formula& h) {
  switch (h.kind()) {
    case FormulaKind::top:
    case FormulaKind::atom:
    case FormulaKind::pattern_update:
      return Formula::pattern_update(pattern, graph, h);
    case FormulaKind::negation:
      return Formula::negation(push(pattern, graph, h.operand()));
    case FormulaKind::conjunction:
      return Formula::conjunction(push(pattern, graph, h.left()), push(pattern, graph, h.right()));
    case FormulaKind::distributed_knowledge: {
      const auto& agents = pattern->agents();
      const auto group = agents.set_of(h.group());
      const auto& r = pattern->graph(graph);
      const auto senders = agents.names_of(r.senders(group));
      std::vector<Formula> parts;
      for (std::size_t j = 0; j < pattern->size(); ++j) {
        const auto& other = pattern->graph(j);
        bool same = true;
        for (auto a : group.members()) same = same && other.senders(a) == r.senders(a);
        if (same) parts.push_back(Formula::dknow(senders, push(pattern, j, h.operand())));
      }
      return Formula::conjoin(parts);
    }
    case FormulaKind::action_update:
      break;
  }
  throw ModelError("action model modalities have no update normal form here");
}

bool is_block(const Formula& f) {
  if (f.kind() == FormulaKind::pattern_update) return is_block(f.operand());
  return f.is_dynamic_free();
}

}  // namespace

Formula iunf_translate(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::top:
    case FormulaKind::atom:
      return f;
    case FormulaKind::negation:
      return Formula::negation(iunf_translate(f.operand()));
    case FormulaKind::conjunction:
      return Formula::conjunction(iunf_translate(f.left()), iunf_translate(f.right()));
    case FormulaKind::distributed_knowledge:
      return Formula::dknow(f.group(), iunf_translate(f.operand()));
    case FormulaKind::pattern_update:
      return push(f.pattern(), f.graph(), iunf_translate(f.operand()));
    case FormulaKind::action_update:
      break;
  }
  throw ModelError("iunf translation is defined for pattern modalities only");
}

bool is_iunf(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::top:
    case FormulaKind::atom:
      return true;
    case FormulaKind::negation:
    case FormulaKind::distributed_knowledge:
      return is_iunf(f.operand());
    case FormulaKind::conjunction:
      return is_iunf(f.left()) && is_iunf(f.right());
    case FormulaKind::pattern_update:
      return is_block(f.operand());
    case FormulaKind::action_update:
      return false;
  }
  return false;
}

}  // namespace epi

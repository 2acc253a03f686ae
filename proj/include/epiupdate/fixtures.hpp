#pragma once

#include <memory>

#include "epiupdate/action.hpp"
#include "epiupdate/comm.hpp"
#include "epiupdate/model.hpp"

/// Structures from the running examples: two agents a and b.
namespace epi::fixtures {

Agents two_agents();
Atom p_a();
Atom p_b();
Atom q_a();

CommGraph identity_graph();
CommGraph universal_graph();
/// I plus a->b.
CommGraph graph_ab();
/// I plus b->a.
CommGraph graph_ba();

/// {I, Rab}
std::shared_ptr<const CommPattern> byzantine();
/// {Rab, Rba, U}
std::shared_ptr<const CommPattern> immediate_snapshot();
std::shared_ptr<const CommPattern> identity_pattern();
std::shared_ptr<const CommPattern> universal_pattern();

/// The interpreted system over {p_a, p_b}; worlds 00, 01, 10, 11.
EpistemicModel square();
/// Worlds w1 (p_a) and w2 (not p_a); b cannot tell them apart.
EpistemicModel byzantine_initial();
/// p_a in both worlds, q_a only in w1; b cannot tell them apart.
EpistemicModel fresh_variable_model();
/// The interpreted system over {p_a, q_a}: a knows both, b neither.
EpistemicModel pq_square();

std::shared_ptr<const ActionModel> skip();
/// Announcement whether p_a | p_b: actions `yes` and `no`, told apart by everyone.
std::shared_ptr<const ActionModel> announce_pa_or_pb();
/// b learns whether p_a: actions `p` (pre p_a) and `np` (pre ~p_a), told apart by everyone.
std::shared_ptr<const ActionModel> reveal_pa();

}  // namespace epi::fixtures

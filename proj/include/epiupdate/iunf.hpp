#pragma once

#include "epiupdate/formula.hpp"

namespace epi {

/// Translation into iterated update normal form:
///   t([P,R]p)        = [P,R]p
///   t([P,R]~f)       = ~t([P,R]f)
///   t([P,R](f & g))  = t([P,R]f) & t([P,R]g)
///   t([P,R]D_B f)    = AND over R' in P with R'a = Ra for a in B of D_{RB} t([P,R']f)
///   t([P,R][P',R']f) = t([P,R] t([P',R']f))
/// with t commuting with the static connectives. A modality in front of an
/// update block that is already normal is prepended to it.
/// Throws ModelError if the formula contains an action-model modality.
Formula iunf_translate(const Formula& f);

/// True iff every pattern modality heads a block of pattern modalities ending
/// in a dynamic-free formula, and no action-model modality occurs.
bool is_iunf(const Formula& f);

}  // namespace epi

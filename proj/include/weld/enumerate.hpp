#pragma once

// Exhaustive enumeration of small Gauss codes and solid ribbon data.

#include <cstddef>
#include <functional>

#include "weld/core.hpp"

namespace weld {

/// Every valid code with exactly `crossings` crossings and `components`
/// components whose crossings are numbered 1, 2, ... in order of first
/// appearance (reading components in order). Every code is a relabeling of
/// one of these; rotations and component orders are not identified.
void for_each_gauss_code(std::size_t crossings, std::size_t components,
                         const std::function<void(const GaussCode&)>& visit);

/// Every valid solid ribbon datum with exactly `singularities` singularities
/// and `tori` tori whose essentials, read torus by torus, are 1, 2, ...
/// Contractibles range over every chamber (or the loose set) of every torus;
/// all sign assignments.
void for_each_solid_ribbon(std::size_t singularities, std::size_t tori,
                           const std::function<void(const SolidRibbonData&)>& visit);

}  // namespace weld

#ifndef GEOINEQ_NUMERIC_HPP
#define GEOINEQ_NUMERIC_HPP

#include <array>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "geoineq/algebraize.hpp"
#include "geoineq/construction.hpp"

namespace geoineq {

// Floating-point witness of a construction: concrete coordinates for every
// point and values for every quantity. Used for candidate-root selection and
// by the test suites; never on an exact decision path.
struct Instance {
    std::map<std::string, std::array<double, 2>> pts;
    std::map<std::string, double> qty;
};

// Draw a random instance constructively (free points uniform, dependent
// points computed geometrically). Constraints like triangle orientation are
// rejection-sampled; nullopt on a degenerate draw (caller retries).
// pin_first_two places the first two free points at (0,0) and (1,0).
std::optional<Instance> random_instance(const Construction& c, std::mt19937& rng,
                                        bool pin_first_two);

// Variable assignment for a system derived from the same construction
// (coordinates, cos/sin of each polygon, quantity values; the ratio slot, if
// any, is filled per the query's balanced exponents).
std::vector<double> instance_vars(const Instance& inst, const SemiAlgebraicSystem& s,
                                  const Construction& c, const QuerySpec* query = nullptr);

// The balanced ratio q2^e2 / q1^e1 at the instance.
double instance_ratio(const Instance& inst, const QuerySpec& q);

// Instance from user-supplied coordinates for the non-derived points (free,
// triangle, on-segment); derived points and quantities are computed. Throws
// std::runtime_error("invalid-instance") on missing coordinates or a
// structurally degenerate configuration.
Instance instance_from_coords(const Construction& c,
                              const std::map<std::string, std::array<double, 2>>& coords);

} // namespace geoineq

#endif

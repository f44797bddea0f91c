#pragma once

#include <vector>

#include <Eigen/Core>

#include "mfpinn/benchmarks/registry.hpp"
#include "mfpinn/network/param_set.hpp"

namespace mfpinn::benchmarks {

/// Responses of a trained surrogate in the units of def.response for every
/// row of `samples` at time t. Transition layers use vectorised bisection
/// over the problem's space interval; samples without a sign change throw
/// BracketError.
std::vector<double> surrogate_responses(const BenchmarkDef& def, const network::ParamSet& params,
                                        const Eigen::MatrixXd& samples, double t);

reliability::ResponseFn surrogate_response_fn(const BenchmarkDef& def, const network::ParamSet& params);

}  // namespace mfpinn::benchmarks

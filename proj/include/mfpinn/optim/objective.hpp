#pragma once

#include <functional>

#include <Eigen/Core>

#include "mfpinn/deriv/grad.hpp"
#include "mfpinn/network/param_set.hpp"

namespace mfpinn::optim {

/// Loss and full-length gradient at the given parameters. Entries of frozen
/// layers may be left at zero; optimizers never read them.
using ParamObjective = std::function<deriv::GradRecord(const network::ParamSet&)>;

/// Plain vector objective: returns f(x) and writes grad f(x).
using VectorObjective = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd& grad)>;

}  // namespace mfpinn::optim

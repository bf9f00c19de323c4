#pragma once

#include <string_view>

#include "treepot/config.hpp"
#include "treepot/report.hpp"

namespace treepot {

/// Exact identities: multiplicativity of H and G, solver certification,
/// diagonal Green values, stochasticity of the h-transform, Martin kernel
/// normalization, restriction monotonicity.
SuiteOutput cmd_identities(const ExperimentConfig& config);

/// Conditioned hitting products, occupation identity, tube lower bound, tube
/// Green ratio and the stopped martingale.
SuiteOutput cmd_lemmas(const ExperimentConfig& config);

/// Two-scale convergence/boundedness/energy flags of test harmonic functions
/// on sampled boundary rays, and their co-occurrence.
SuiteOutput cmd_fatou(const ExperimentConfig& config);

/// Plain or conditioned walks written out path by path.
SuiteOutput cmd_simulate(const ExperimentConfig& config);

/// Dispatch by subcommand name; throws ConfigError for unknown names.
SuiteOutput run_suite(std::string_view name, const ExperimentConfig& config);

}  // namespace treepot

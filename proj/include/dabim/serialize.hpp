#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "dabim/dastruct.hpp"

namespace dabim {

using Json = nlohmann::ordered_json;

/// Malformed or invalid input file. The message names the offending field.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kSchemaVersion = "dabim/1";

Json grading_to_json(const Grading& g);
Json hom_to_json(const GradingHom& h);

Json algebra_to_json(const PresentedAlgebra& alg);
/// Rebuilds the algebra and checks its rewriting system for confluence.
AlgebraPtr algebra_from_json(const Json& j);

/// Nodes, then concrete arrows, then families; both algebras are embedded.
Json bimodule_to_json(const DABimodule& M);
/// Rebuilds the bimodule and re-runs the idempotent and grading checks.
BimodulePtr bimodule_from_json(const Json& j);

Json load_json_file(const std::string& path);

}  // namespace dabim

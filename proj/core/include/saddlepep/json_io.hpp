#pragma once

#include "saddlepep/certify.hpp"
#include "saddlepep/games.hpp"
#include "saddlepep/interpolation.hpp"

#include <json.hpp>

#include <string>

namespace pep {

using Json = nlohmann::json;

// SampleSet schema:
// {"d_x": int, "d_y": int,
//  "samples": [{"x": [...], "y": [...], "gx": [...], "gy": [...], "f": num}]}
Json to_json(const SampleSet& set);
SampleSet sample_set_from_json(const Json& j);

Json to_json(const CheckReport& report);
Json to_json(const ConstraintKernel& kernel);  // row-major 4x4 arrays
Json to_json(const KernelSet& ks);

// Certificate schema:
// {"rho2": num, "lambda": [{"c": int, "i": str, "j": str, "v": num}],
//  "nu": [...], "Px": [[...]], "Py": [[...]], "residuals": {...}}
Json to_json(const Certificate& cert);
Certificate certificate_from_json(const Json& j);

Json to_json(const RateResult& result);

// Problem dump for cross-solver debugging: variable shapes, dense lifted
// matrices and the equality rows of both stages.
Json problem_dump(const LyapSdp& sdp);

Json to_json(const QuadraticGame& game);
QuadraticGame game_from_json(const Json& j);

Json to_json(const SoundnessReport& report);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

}  // namespace pep

#pragma once

/**
 * @file io.hpp
 * @brief JSON file formats for algebras, modules, complexes and short exact
 *        sequences, plus deterministic table serialization.
 *
 * Formats (UTF-8 JSON):
 *   algebra: {"p": int, "dim": int, "basis": [str], "unit": [int],
 *             "mul": d x d array of length-d int arrays}
 *   module:  {"algebra": <path or inline algebra>, "dim": int,
 *             "action": [d matrices, row-major, row = output coordinate]}
 *   complex: {"algebra": ... (optional), "modules": {"<degree>": module},
 *             "differentials": {"<degree>": matrix}}
 *   ses:     {"algebra": ..., "sub"/"mid"/"quot": module,
 *             "inj"/"surj": matrix}
 */

#include <json.hpp>

#include "homcx/cohomology.hpp"

namespace homcx {

using Json = nlohmann::ordered_json;

Json algebra_to_json(const Algebra& a);
AlgebraPtr algebra_from_json(const Json& j);

Json module_to_json(const Module& m, bool inline_algebra = true);
/// `base_dir` resolves relative algebra paths; `inherited` supplies the
/// algebra when the file omits it.
Module module_from_json(const Json& j, const std::string& base_dir,
                        const AlgebraPtr& inherited = nullptr);

Json complex_to_json(const Complex& c, bool inline_algebra = true);
Complex complex_from_json(const Json& j, const std::string& base_dir,
                          const AlgebraPtr& inherited = nullptr);

Json mat_to_json(const Mat& m);
Mat mat_from_json(const Json& j, std::uint32_t p);

AlgebraPtr load_algebra(const std::string& path);
Module load_module(const std::string& path);
Complex load_complex(const std::string& path);

struct SesFile {
    Module sub, mid, quot;
    ModMap inj, surj;
};
SesFile load_ses(const std::string& path);

/// Any of the three input kinds, detected by keys.
struct LoadedObject {
    enum Kind { AlgebraKind, ModuleKind, ComplexKind } kind;
    AlgebraPtr algebra;
    std::optional<Module> module;
    std::optional<Complex> complex;
    /// the object as a bounded complex (module in degree 0)
    Complex as_complex() const;
};
LoadedObject load_object(const std::string& path);

/// TSV rendering: "degree<TAB>dimension" lines, degrees ascending.
std::string table_tsv(const CohomTable& t);
/// JSON rendering with window metadata.
std::string table_json(const CohomTable& t);

} // namespace homcx

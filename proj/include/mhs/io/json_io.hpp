#pragma once

#include <json.hpp>
#include <string>

#include "mhs/core/mixed_hodge.hpp"
#include "mhs/curve/torus.hpp"
#include "mhs/ext/extension.hpp"
#include "mhs/ext/torus.hpp"
#include "mhs/random/generators.hpp"

namespace mhs::io {

using Json = nlohmann::json;

// Readers throw Error(schema, ...) naming the offending field by its path,
// e.g. "E.hodge[1].basis[0][2]: expected scalar".

/// Exact: "a/b+c/d*i" strings (plain integers accepted); float: [re, im].
Json to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j, Backend backend, const std::string& path);

/// Integer matrices (f, g, P) as row-major lists of rows.
Json int_matrix_to_json(const Matrix& m);
Matrix int_matrix_from_json(const Json& j, const std::string& path);
/// Scalar matrices as row-major lists of rows.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, Backend backend, const std::string& path);
/// Subspace bases as column-major lists of columns.
Json basis_to_json(const Matrix& basis);
Subspace basis_from_json(const Json& j, std::size_t ambient, Backend backend, const std::string& path);

Json to_json(const MixedHodgeStructure& h);
MixedHodgeStructure mhs_from_json(const Json& j, const std::string& path = "");

Json to_json(const ExtensionSequence& s);
ExtensionSequence sequence_from_json(const Json& j, const std::string& path = "");

/// Sequence fields plus "P" and "partner".
Json to_json(const SequencePairing& p);
SequencePairing pairing_from_json(const Json& j, const std::string& path = "");

Json to_json(const HodgeNumbers& h);
HodgeNumbers hodge_numbers_from_json(const Json& j, const std::string& path);
Json to_json(const DeligneSplitting& split);
Json to_json(const TorusElement& t);

Json to_json(const random::GeneratorSpec& spec);
random::GeneratorSpec spec_from_json(const Json& j, const std::string& path = "");

Json to_json(curve::Complex z);
curve::Complex complex_from_json(const Json& j, const std::string& path);

struct CurveInput {
  curve::ComplexTorus torus;
  curve::DivisorZero divisor;
};
Json to_json(const curve::ComplexTorus& t, const curve::DivisorZero& d);
CurveInput curve_from_json(const Json& j, const std::string& path = "");

/// Converts every structure to the float backend with the given rank threshold.
MixedHodgeStructure with_backend(const MixedHodgeStructure& h, Backend backend);
ExtensionSequence with_backend(const ExtensionSequence& s, Backend backend);
SequencePairing with_backend(const SequencePairing& p, Backend backend);

}  // namespace mhs::io

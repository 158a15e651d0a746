#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "hopfx/qt.hpp"
#include "hopfx/report.hpp"

namespace hopfx {

// Algebra-file schema: structure constants with all scalars serialized as
// strings in the exact-field grammar.
//   mult    entries [i, j, k, "c"]: e_i e_j contains c e_k
//   comult  entries [i, j, k, "c"]: Delta(e_i) contains c e_j (x) e_k
//   antipode entries [i, j, "c"]:   S(e_i) contains c e_j
//   R       entries [i, j, "c"]:    R contains c e_i (x) e_j
struct LoadedAlgebra {
    QTStructure qt;
    Report validation; // validate_hopf followed by validate_qt
};

// Throws IoError/ParseError on malformed documents.  Unless force_report is
// set, throws PreconditionFailed when validation fails.
LoadedAlgebra load_algebra_json(const std::string& text, bool force_report = false);

std::string algebra_file_json(const HopfData& h, const LegElement& r,
                              const std::optional<SparseVec>& ribbon);

// bare associative algebra (field, dim, unit, mult)
std::string algebra_to_json(const AlgebraData& a);
AlgebraData algebra_from_json(const std::string& text);

std::string linmap_to_json(const LinMap& m, unsigned conductor);

// stdout payload: deterministic ordering, timings only on request
std::string report_to_json(const Report& rep, bool timings = false);
void print_report_summary(const Report& rep, std::ostream& os);

} // namespace hopfx

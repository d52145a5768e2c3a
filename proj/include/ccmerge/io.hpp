#pragma once

#include <filesystem>
#include <string>

#include "ccmerge/congruence.hpp"
#include "ccmerge/validation.hpp"

namespace ccm {

// JSON interchange. Indices in files are 1-based to keep fixtures
// copy-pasteable against the triple listings they come from; the in-memory
// structures stay 0-based. Schemas are closed: unknown fields are rejected.
// Output is byte-stable: keys sorted, floats as shortest round-trip
// decimals, so save(load(save(x))) == save(x).

AccumulatorComplex complex_from_json(const std::string& text);
std::string complex_to_json(const AccumulatorComplex& acc);

QuotientComplex quotient_from_json(const std::string& text);
std::string quotient_to_json(const QuotientComplex& q);

std::string report_to_json(const ValidationReport& report);

AccumulatorComplex load_complex(const std::filesystem::path& path);
void save_complex(const AccumulatorComplex& acc, const std::filesystem::path& path);

QuotientComplex load_quotient(const std::filesystem::path& path);
void save_quotient(const QuotientComplex& q, const std::filesystem::path& path);

void save_report(const ValidationReport& report, const std::filesystem::path& path);

}  // namespace ccm

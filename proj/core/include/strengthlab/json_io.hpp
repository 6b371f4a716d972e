#pragma once

#include <string>

#include "strengthlab/degeneration.hpp"
#include "strengthlab/forms.hpp"
#include "strengthlab/qrank.hpp"
#include "strengthlab/quadspace.hpp"
#include "strengthlab/witness.hpp"

namespace strengthlab {

// JSON serializers and parsers for all certificate and report types. Output
// is deterministic (keys sorted, two-space indent, no timestamps or timing),
// so byte comparison is meaningful. Parsers validate structure and field
// compatibility and throw std::runtime_error with a description on bad
// input; semantic re-verification (certificate replay, witness checking) is
// the caller's job via each module's verifier.

std::string qrank_report_to_json(const CubicForm& f, const QrankResult& res,
                                 const LQDecomposition* decomposition);

std::string decomposition_to_json(const LQDecomposition& d);
LQDecomposition decomposition_from_json(const std::string& text);

std::string degeneration_certificate_to_json(const DegenerationCertificate& cert);
DegenerationCertificate degeneration_certificate_from_json(const std::string& text);

std::string separable_result_to_json(const SeparableResult& res);

std::string reduction_report_to_json(const ReductionReport& rep);

std::string phase_certificate_to_json(const PhaseCertificate& cert);
PhaseCertificate phase_certificate_from_json(const std::string& text);

std::string nonvanishing_certificate_to_json(const NonvanishingCertificate& cert);

std::string quadric_subspace_to_json(const QuadricSubspace& q);
QuadricSubspace quadric_subspace_from_json(const std::string& text);

std::string subspace_to_json(const Subspace& w);
Subspace subspace_from_json(const std::string& text);

}  // namespace strengthlab

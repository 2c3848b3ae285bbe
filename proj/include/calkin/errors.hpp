#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace calkin {

enum class errc {
    not_self_map,
    boundary_arc_contact,
    pole_in_closed_disk,
    pole_at,
    indeterminate,
    argument_not_in_upper_half_plane,
    contact_arc_detected,
    data_extraction_failed,
    order_not_detected,
    map_not_in_s,
    map_not_in_s0,
    map_not_in_s2,
    quadrature_failure,
    gram_not_psd,
    indeterminate_data_match,
    exact_mode_required,
    hypotheses_not_met,
    osculating_map_invalid,
    rho_not_bounded_away_from_one,
    no_solution_at_depth,
    precision_budget_exceeded,
    parse_error,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::not_self_map: return "NotSelfMap";
        case errc::boundary_arc_contact: return "BoundaryArcContact";
        case errc::pole_in_closed_disk: return "PoleInClosedDisk";
        case errc::pole_at: return "PoleAt";
        case errc::indeterminate: return "Indeterminate";
        case errc::argument_not_in_upper_half_plane: return "ArgumentNotInUpperHalfPlane";
        case errc::contact_arc_detected: return "ContactArcDetected";
        case errc::data_extraction_failed: return "DataExtractionFailed";
        case errc::order_not_detected: return "OrderNotDetected";
        case errc::map_not_in_s: return "MapNotInS";
        case errc::map_not_in_s0: return "MapNotInS0";
        case errc::map_not_in_s2: return "MapNotInS2";
        case errc::quadrature_failure: return "QuadratureFailure";
        case errc::gram_not_psd: return "GramNotPSD";
        case errc::indeterminate_data_match: return "IndeterminateDataMatch";
        case errc::exact_mode_required: return "ExactModeRequired";
        case errc::hypotheses_not_met: return "HypothesesNotMet";
        case errc::osculating_map_invalid: return "OsculatingMapInvalid";
        case errc::rho_not_bounded_away_from_one: return "RhoNotBoundedAwayFromOne";
        case errc::no_solution_at_depth: return "NoSolutionAtDepth";
        case errc::precision_budget_exceeded: return "PrecisionBudgetExceeded";
        case errc::parse_error: return "ParseError";
    }
    return "UnknownError";
}

// Library-wide exception. `witness` carries the offending point when one exists
// (e.g. a z with |phi(z)| >= 1 for NotSelfMap).
class error : public std::runtime_error {
  public:
    error(errc code, std::string detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}
    error(errc code, std::string detail, std::complex<double> witness)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
          code_(code),
          witness_(witness) {}

    errc code() const { return code_; }
    const std::optional<std::complex<double>>& witness() const { return witness_; }

  private:
    errc code_;
    std::optional<std::complex<double>> witness_;
};

} // namespace calkin

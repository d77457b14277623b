#pragma once

#include <stdexcept>
#include <string>

namespace miop {

// Base for every failure raised by the library. Each subclass names the
// mathematical claim that was violated, so callers can report it verbatim.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define MIOP_DEFINE_ERROR(Name) \
    struct Name : Error {       \
        using Error::Error;     \
    }

MIOP_DEFINE_ERROR(DivisionError);
MIOP_DEFINE_ERROR(DegenerateLeadError);
MIOP_DEFINE_ERROR(DependentSeedsError);
MIOP_DEFINE_ERROR(ExponentMismatchError);
MIOP_DEFINE_ERROR(PoleError);
MIOP_DEFINE_ERROR(OnSpectrumError);
MIOP_DEFINE_ERROR(DomainError);
MIOP_DEFINE_ERROR(MultiplicityLawError);
MIOP_DEFINE_ERROR(MultipleClustersError);
MIOP_DEFINE_ERROR(ZeroAtEta0Error);
MIOP_DEFINE_ERROR(FuchsViolation);
MIOP_DEFINE_ERROR(QrDriftError);
MIOP_DEFINE_ERROR(NonconvergenceError);
MIOP_DEFINE_ERROR(RangeError);
MIOP_DEFINE_ERROR(MismatchError);

#undef MIOP_DEFINE_ERROR

}  // namespace miop

#ifndef OPCHAOS_ERRORS_HPP
#define OPCHAOS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace opchaos {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define OPCHAOS_DEFINE_ERROR(Name)                                        \
    struct Name : Error {                                                 \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

OPCHAOS_DEFINE_ERROR(IndexOutOfDomain);
OPCHAOS_DEFINE_ERROR(NonFiniteWeight);
OPCHAOS_DEFINE_ERROR(ExactUnavailable);
OPCHAOS_DEFINE_ERROR(DomainMismatch);
OPCHAOS_DEFINE_ERROR(NonUnitGrid);
OPCHAOS_DEFINE_ERROR(SupNormMismatch);
OPCHAOS_DEFINE_ERROR(UndecidableTail);
OPCHAOS_DEFINE_ERROR(NonInjectiveMap);
OPCHAOS_DEFINE_ERROR(ZeroWeightBilateral);
OPCHAOS_DEFINE_ERROR(EmptyFamily);
OPCHAOS_DEFINE_ERROR(MalformedCertificate);
OPCHAOS_DEFINE_ERROR(NonpositiveWeight);
OPCHAOS_DEFINE_ERROR(NoDissipativePart);
OPCHAOS_DEFINE_ERROR(DivergentASeries);
OPCHAOS_DEFINE_ERROR(DivergentSum);
OPCHAOS_DEFINE_ERROR(SupportExplosion);
OPCHAOS_DEFINE_ERROR(WindowTooLarge);
OPCHAOS_DEFINE_ERROR(BoundaryContamination);
OPCHAOS_DEFINE_ERROR(ConfigError);

#undef OPCHAOS_DEFINE_ERROR

} // namespace opchaos

#endif

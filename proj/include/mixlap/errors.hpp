#pragma once

#include <stdexcept>
#include <string>

namespace mixlap {

/// Base for all library errors; `code()` is a stable machine-readable tag.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define MIXLAP_DEFINE_ERROR(Name)                                    \
    class Name : public Error {                                      \
    public:                                                          \
        explicit Name(const std::string& what) : Error(#Name, what) {} \
    }

MIXLAP_DEFINE_ERROR(EmptyInterior);
MIXLAP_DEFINE_ERROR(BadSpacing);
MIXLAP_DEFINE_ERROR(NotInterior);
MIXLAP_DEFINE_ERROR(UnsupportedOrder);
MIXLAP_DEFINE_ERROR(GridMismatch);
MIXLAP_DEFINE_ERROR(SubcriticalDimension);
MIXLAP_DEFINE_ERROR(SingularSystem);
MIXLAP_DEFINE_ERROR(NotContracting);
MIXLAP_DEFINE_ERROR(MaxIterExceeded);
MIXLAP_DEFINE_ERROR(NoContractionFound);
MIXLAP_DEFINE_ERROR(Diverged);
MIXLAP_DEFINE_ERROR(Overflow);
MIXLAP_DEFINE_ERROR(AnnulusFailure);
MIXLAP_DEFINE_ERROR(NoSupersolution);
MIXLAP_DEFINE_ERROR(TransformFailed);
MIXLAP_DEFINE_ERROR(MaxPrincipleViolated);
MIXLAP_DEFINE_ERROR(TooFewNodes);
MIXLAP_DEFINE_ERROR(TooFewScales);
MIXLAP_DEFINE_ERROR(ConfigError);

#undef MIXLAP_DEFINE_ERROR

}  // namespace mixlap

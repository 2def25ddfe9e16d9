#pragma once

#include <stdexcept>
#include <string>

namespace toda {

// Base for every domain error raised by the library. `name()` is the stable
// identifier printed by the CLI (e.g. "OrbitOverflow").
class error : public std::runtime_error {
public:
    error(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define TODA_DEFINE_ERROR(Type)                                             \
    class Type : public error {                                             \
    public:                                                                 \
        explicit Type(const std::string& what) : error(#Type, what) {}      \
    }

// mass-algebra
TODA_DEFINE_ERROR(NotOfForm);
TODA_DEFINE_ERROR(ParseError);
// gamma-enumerator
TODA_DEFINE_ERROR(OrbitOverflow);
// q-condition-mk
TODA_DEFINE_ERROR(SingularFound);
TODA_DEFINE_ERROR(BasisMismatch);
// forbidden-set
TODA_DEFINE_ERROR(NonPositiveMu);
TODA_DEFINE_ERROR(TooManyVortices);
TODA_DEFINE_ERROR(InvalidVortex);
TODA_DEFINE_ERROR(InvalidArgument);
// liouville-oracle
TODA_DEFINE_ERROR(ConstantMap);
TODA_DEFINE_ERROR(EvaluationAtUndefinedPoint);
TODA_DEFINE_ERROR(QuadratureNonConvergence);
TODA_DEFINE_ERROR(RootClusterAmbiguous);
TODA_DEFINE_ERROR(NotAVortex);

#undef TODA_DEFINE_ERROR

}  // namespace toda

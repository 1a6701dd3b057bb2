#pragma once

#include <stdexcept>
#include <string>

namespace wmkit {

// Base for all domain errors. `name()` is the stable machine-readable
// identifier printed by the CLI on stderr.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define WMKIT_DEFINE_ERROR(Name)                                       \
    class Name : public Error {                                        \
    public:                                                            \
        explicit Name(const std::string& what = #Name)                 \
            : Error(#Name, what) {}                                    \
    }

WMKIT_DEFINE_ERROR(DecodeError);
WMKIT_DEFINE_ERROR(UnsupportedFormat);
WMKIT_DEFINE_ERROR(IoError);
WMKIT_DEFINE_ERROR(InconsistentFrames);
WMKIT_DEFINE_ERROR(NotSingleFrame);
WMKIT_DEFINE_ERROR(CapacityExceeded);
WMKIT_DEFINE_ERROR(MediaTooSmall);
WMKIT_DEFINE_ERROR(PayloadRequired);
WMKIT_DEFINE_ERROR(UnsupportedCombination);
WMKIT_DEFINE_ERROR(ConfigParseError);
WMKIT_DEFINE_ERROR(UnknownConfigKey);
WMKIT_DEFINE_ERROR(OutOfRangeValue);
WMKIT_DEFINE_ERROR(DimensionMismatch);
WMKIT_DEFINE_ERROR(LengthMismatch);
WMKIT_DEFINE_ERROR(TooSmall);
WMKIT_DEFINE_ERROR(EmptyPositives);
WMKIT_DEFINE_ERROR(TextTooShort);
WMKIT_DEFINE_ERROR(CollisionError);
WMKIT_DEFINE_ERROR(UnknownAttack);
WMKIT_DEFINE_ERROR(BadParams);
WMKIT_DEFINE_ERROR(BadSpec);

#undef WMKIT_DEFINE_ERROR

}  // namespace wmkit

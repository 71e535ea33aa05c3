#pragma once

#include <stdexcept>
#include <string>

namespace edgebench {

/// Base for every error raised by the harness. `kind()` is a stable
/// identifier used in CLI diagnostics and tests.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define EDGEBENCH_ERROR(Name)                                                  \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& what) : Error(#Name, what) {}         \
    }

EDGEBENCH_ERROR(TimeRegression);
EDGEBENCH_ERROR(InvalidDistribution);
EDGEBENCH_ERROR(InvalidRate);
EDGEBENCH_ERROR(ExhaustedWorkload);
EDGEBENCH_ERROR(DuplicateBlobName);
EDGEBENCH_ERROR(IncompleteRecord);
EDGEBENCH_ERROR(EmptyRun);
EDGEBENCH_ERROR(EmptyInput);
EDGEBENCH_ERROR(UnsupportedFormat);
EDGEBENCH_ERROR(ParseError);
EDGEBENCH_ERROR(UnknownKey);
EDGEBENCH_ERROR(MissingProfile);
EDGEBENCH_ERROR(ValidationError);

#undef EDGEBENCH_ERROR

}  // namespace edgebench

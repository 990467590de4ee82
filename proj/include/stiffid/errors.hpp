#pragma once

#include <stdexcept>
#include <string>

namespace stiffid {

/// Broad failure class; the CLI maps it onto its exit code.
enum class ErrorCategory { validation, numerical, io };

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, std::string kind, const std::string& module, const std::string& what)
        : std::runtime_error(module + ": " + kind + ": " + what),
          category_(category), kind_(std::move(kind)) {}

    ErrorCategory category() const noexcept { return category_; }
    const std::string& kind() const noexcept { return kind_; }

private:
    ErrorCategory category_;
    std::string kind_;
};

#define STIFFID_DEFINE_ERROR(Name, Category)                                      \
    class Name : public Error {                                                   \
    public:                                                                       \
        Name(const std::string& module, const std::string& what)                  \
            : Error(ErrorCategory::Category, #Name, module, what) {}              \
    };

// ingest / validation
STIFFID_DEFINE_ERROR(SchemaError, validation)
STIFFID_DEFINE_ERROR(GeometryError, validation)
STIFFID_DEFINE_ERROR(RankError, validation)
STIFFID_DEFINE_ERROR(FrameMismatch, validation)
STIFFID_DEFINE_ERROR(InvalidArgument, validation)

// fitting
STIFFID_DEFINE_ERROR(DegenerateAbscissa, numerical)
STIFFID_DEFINE_ERROR(LevelMismatch, validation)
STIFFID_DEFINE_ERROR(ZeroScale, numerical)

// torsor-core / solver
STIFFID_DEFINE_ERROR(ComplexSpectrum, numerical)
STIFFID_DEFINE_ERROR(SingularLoadSet, numerical)
STIFFID_DEFINE_ERROR(Singular, numerical)
STIFFID_DEFINE_ERROR(DegenerateProjection, numerical)

// center
STIFFID_DEFINE_ERROR(ZeroDisplacement, validation)
STIFFID_DEFINE_ERROR(ParallelLines, numerical)
STIFFID_DEFINE_ERROR(DegenerateDirections, numerical)
STIFFID_DEFINE_ERROR(ZeroVector, numerical)

// synth
STIFFID_DEFINE_ERROR(SingularK, numerical)

STIFFID_DEFINE_ERROR(IoError, io)

#undef STIFFID_DEFINE_ERROR

}  // namespace stiffid

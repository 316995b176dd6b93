#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gluing {

/// Base of every error raised by the library. `kind()` is the stable name
/// used in reports and CLI diagnostics.
class Error : public std::runtime_error
{
  public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind))
    {}

    const std::string& kind() const noexcept { return kind_; }

  private:
    std::string kind_;
};

#define GLUING_DEFINE_ERROR(Name)                                                                                      \
    class Name : public Error                                                                                          \
    {                                                                                                                  \
      public:                                                                                                          \
        explicit Name(const std::string& what) : Error(#Name, what) {}                                                 \
    }

GLUING_DEFINE_ERROR(DivisionByZeroJet);
GLUING_DEFINE_ERROR(DomainError);
GLUING_DEFINE_ERROR(NotDeflatable);
GLUING_DEFINE_ERROR(ArityError);
GLUING_DEFINE_ERROR(DegenerateNormal);
GLUING_DEFINE_ERROR(SingularCurvePoint);
GLUING_DEFINE_ERROR(SingularPoint);
GLUING_DEFINE_ERROR(PreconditionFailed);
GLUING_DEFINE_ERROR(NotApplicable);
GLUING_DEFINE_ERROR(ConfigError);
GLUING_DEFINE_ERROR(IoError);
GLUING_DEFINE_ERROR(OracleMismatch);

#undef GLUING_DEFINE_ERROR

class ParseError : public Error
{
  public:
    ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& detail);

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }
    const std::string& detail() const noexcept { return detail_; }

  private:
    std::size_t offset_;
    std::string detail_;
    std::vector<std::string> expected_;
};

/// An explicit frame failed one of the framed-curve invariants at a pre-sample.
class FrameInvalid : public Error
{
  public:
    FrameInvalid(double t, std::string invariant, double residual);

    double t() const noexcept { return t_; }
    const std::string& invariant() const noexcept { return invariant_; }
    double residual() const noexcept { return residual_; }

  private:
    double t_;
    std::string invariant_;
    double residual_;
};

/// A developable-surface hypothesis ((κ₁,κ₃) or (κ₂,κ₃) nonvanishing, β nonzero) failed at `t`.
class AssumptionViolated : public Error
{
  public:
    AssumptionViolated(double t, std::string hypothesis);

    double t() const noexcept { return t_; }
    const std::string& hypothesis() const noexcept { return hypothesis_; }

  private:
    double t_;
    std::string hypothesis_;
};

class CylindricalAt : public Error
{
  public:
    explicit CylindricalAt(double t);

    double t() const noexcept { return t_; }

  private:
    double t_;
};

class GluingMismatch : public Error
{
  public:
    GluingMismatch(std::string quantity, double max_deviation, double t);

    double max_deviation() const noexcept { return max_deviation_; }
    double t() const noexcept { return t_; }

  private:
    double max_deviation_;
    double t_;
};

} // namespace gluing

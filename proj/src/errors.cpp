#include "gluing/errors.hpp"

#include <sstream>

namespace gluing {

namespace {

std::string join(const std::vector<std::string>& items)
{
    std::string out;
    for (const auto& item : items) {
        if (!out.empty()) out += ", ";
        out += item;
    }
    return out;
}

std::string describe_t(const char* prefix, double t)
{
    std::ostringstream os;
    os.precision(17);
    os << prefix << t;
    return os.str();
}

} // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& detail)
    : Error("ParseError", "parse error at offset " + std::to_string(offset) + ": " + detail +
                              (expected.empty() ? std::string{} : " (expected one of: " + join(expected) + ")")),
      offset_(offset), detail_(detail), expected_(std::move(expected))
{}

FrameInvalid::FrameInvalid(double t, std::string invariant, double residual)
    : Error("FrameInvalid", describe_t("frame invalid at t=", t) + ": " + invariant + " (residual " +
                                std::to_string(residual) + ")"),
      t_(t), invariant_(std::move(invariant)), residual_(residual)
{}

AssumptionViolated::AssumptionViolated(double t, std::string hypothesis)
    : Error("AssumptionViolated", describe_t("assumption violated at t=", t) + ": " + hypothesis), t_(t),
      hypothesis_(std::move(hypothesis))
{}

CylindricalAt::CylindricalAt(double t)
    : Error("CylindricalAt", describe_t("ruling is stationary (beta = 0) at t=", t)), t_(t)
{}

GluingMismatch::GluingMismatch(std::string quantity, double max_deviation, double t)
    : Error("GluingMismatch", quantity + " differs between the two surfaces by " + std::to_string(max_deviation) +
                                  describe_t(" at t=", t)),
      max_deviation_(max_deviation), t_(t)
{}

} // namespace gluing

#pragma once

#include <stdexcept>
#include <string>

namespace expmap {

struct InvalidSlopes : std::runtime_error {
  explicit InvalidSlopes(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyParameterInterval : std::runtime_error {
  explicit EmptyParameterInterval(const std::string& what) : std::runtime_error(what) {}
};

struct NonMonotoneBranch : std::runtime_error {
  explicit NonMonotoneBranch(const std::string& what) : std::runtime_error(what) {}
};

struct ParamOutOfRange : std::runtime_error {
  explicit ParamOutOfRange(const std::string& what) : std::runtime_error(what) {}
};

struct DomainViolation : std::runtime_error {
  explicit DomainViolation(const std::string& what) : std::runtime_error(what) {}
};

struct AtBreakpoint : std::runtime_error {
  explicit AtBreakpoint(const std::string& what) : std::runtime_error(what) {}
};

struct HitsBreakpoint : std::runtime_error {
  int step;
  explicit HitsBreakpoint(int step_)
      : std::runtime_error("orbit hits a breakpoint at step " + std::to_string(step_)),
        step(step_) {}
};

struct DepthTooLarge : std::runtime_error {
  explicit DepthTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct NotUnimodal : std::runtime_error {
  explicit NotUnimodal(const std::string& what) : std::runtime_error(what) {}
};

struct DomainEscape : std::runtime_error {
  explicit DomainEscape(const std::string& what) : std::runtime_error(what) {}
};

struct CylinderCrossing : std::runtime_error {
  explicit CylinderCrossing(const std::string& what) : std::runtime_error(what) {}
};

struct TurningPointHit : std::runtime_error {
  explicit TurningPointHit(const std::string& what) : std::runtime_error(what) {}
};

struct BinsTooSmall : std::runtime_error {
  explicit BinsTooSmall(const std::string& what) : std::runtime_error(what) {}
};

struct NoConvergence : std::runtime_error {
  int iterations;
  explicit NoConvergence(int iters)
      : std::runtime_error("power iteration did not converge after " +
                           std::to_string(iters) + " iterations"),
        iterations(iters) {}
};

struct ExpansionTooWeak : std::runtime_error {
  explicit ExpansionTooWeak(const std::string& what) : std::runtime_error(what) {}
};

struct SupportMismatch : std::runtime_error {
  explicit SupportMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyOrbit : std::runtime_error {
  explicit EmptyOrbit(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace expmap

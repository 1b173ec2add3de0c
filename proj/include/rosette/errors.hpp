#pragma once

#include <stdexcept>
#include <string>

namespace rosette {

/// Base class for every domain error thrown by this library.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class NotARosette : public Error {
  public:
    NotARosette(double theta, double rho)
        : Error("support function is not a rosette: rho(" + std::to_string(theta) +
                ") = " + std::to_string(rho)),
          theta_(theta), rho_(rho) {}
    double theta() const { return theta_; }
    double rho() const { return rho_; }

  private:
    double theta_;
    double rho_;
};

class DegenerateZero : public Error {
  public:
    using Error::Error;
};

class CuspSingularity : public Error {
  public:
    using Error::Error;
};

class NearSingular : public Error {
  public:
    using Error::Error;
};

class SwallowtailPoint : public Error {
  public:
    using Error::Error;
};

class DegenerateSingularity : public Error {
  public:
    using Error::Error;
};

class NotOnSlice : public Error {
  public:
    using Error::Error;
};

class NoLimit : public Error {
  public:
    using Error::Error;
};

class BadBracket : public Error {
  public:
    using Error::Error;
};

class NonConvergent : public Error {
  public:
    using Error::Error;
};

class HypothesisViolated : public Error {
  public:
    using Error::Error;
};

class CurveCrossesSigma : public Error {
  public:
    using Error::Error;
};

class ConfigError : public Error {
  public:
    using Error::Error;
};

}  // namespace rosette

#pragma once

#include <stdexcept>
#include <string>

namespace dslit {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid physical parameters, malformed config files, unknown presets.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// A computation left its domain of validity (non-normalizable state,
/// underflowing normalizer, undefined Gouy phase).
class NumericalBreakdown : public Error {
public:
  using Error::Error;
};

class NoOscillationFound : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

} // namespace dslit

#pragma once

#include <stdexcept>
#include <string>

namespace wps {

// Shared error taxonomy. The CLI maps input/domain problems to exit code 1
// and failed verification runs to exit code 2.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad arguments, malformed configs, schedules that cannot be run.
struct input_error : error {
  using error::error;
};

// Evaluation requested outside a function's valid region.
struct domain_error : error {
  using error::error;
};

// Non-finite samples or other numeric breakdown during evaluation.
struct numeric_error : error {
  using error::error;
};

// Closed-form expression evaluated at its pole.
struct singularity_error : error {
  using error::error;
};

// Kinematically impossible state (total energy below rest energy).
struct unphysical_error : error {
  using error::error;
};

// Overlapping control pulses on one channel.
struct schedule_error : input_error {
  using input_error::input_error;
};

}  // namespace wps

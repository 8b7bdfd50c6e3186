#pragma once
#include <stdexcept>

namespace mssl {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument or config value.
class InvalidParam final : public Error { public: using Error::Error; };
// Two-point solve where sin(omega (t2 - t1)) is numerically zero.
class DegeneratePair final : public Error { public: using Error::Error; };
// Two-point solve where both samples vanish (phase undefined).
class ZeroSignal final : public Error { public: using Error::Error; };
// Not enough usable samples for the requested operation.
class InsufficientData final : public Error { public: using Error::Error; };
// Scene with no sources.
class EmptyScene final : public Error { public: using Error::Error; };
// Random scene generation ran out of rejection-sampling budget.
class ConstraintUnsatisfiable final : public Error { public: using Error::Error; };
// Requested waveform delay exceeds the signal duration.
class DelayOutOfRange final : public Error { public: using Error::Error; };
// Waveforms with different sample rates where equal rates are required.
class MismatchedRates final : public Error { public: using Error::Error; };
// Correlation frame too short for the requested lag range.
class FrameTooShort final : public Error { public: using Error::Error; };
// File could not be opened / read / written.
class IoError final : public Error { public: using Error::Error; };
// File opened fine but its content is not in the expected format.
class ParseError final : public Error { public: using Error::Error; };

}  // namespace mssl

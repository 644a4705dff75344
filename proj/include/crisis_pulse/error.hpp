#pragma once

#include <stdexcept>
#include <string>

namespace crisis_pulse {

// Every failure the library reports derives from Error; the kind() string is
// the stable name used in CLI diagnostics and tests.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define CRISIS_PULSE_ERROR(Name)                                   \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  }

CRISIS_PULSE_ERROR(EmptyCorpus);
CRISIS_PULSE_ERROR(InvalidHyperparameter);
CRISIS_PULSE_ERROR(VocabularyMismatch);
CRISIS_PULSE_ERROR(TopicOutOfRange);
CRISIS_PULSE_ERROR(LexiconMissing);
CRISIS_PULSE_ERROR(RemoteUnavailable);
CRISIS_PULSE_ERROR(ProtocolError);
CRISIS_PULSE_ERROR(NoReportsFound);
CRISIS_PULSE_ERROR(MalformedGroup);
CRISIS_PULSE_ERROR(NoOverlap);
CRISIS_PULSE_ERROR(DegenerateSeries);
CRISIS_PULSE_ERROR(EmptyFrame);
CRISIS_PULSE_ERROR(FormatError);
CRISIS_PULSE_ERROR(ConfigError);
CRISIS_PULSE_ERROR(IoError);

#undef CRISIS_PULSE_ERROR

}  // namespace crisis_pulse

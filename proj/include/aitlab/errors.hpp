#pragma once

#include <stdexcept>
#include <string>

namespace aitlab {

// Store file missing or unreadable/unwritable.
struct StoreIoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Store file present but not a well-formed snapshot.
struct StoreFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A time-bounded query asked for a fuel beyond what the store has run;
// answering would silently drop programs that halt past the horizon.
struct HorizonError : std::runtime_error {
  HorizonError(uint64_t asked, uint64_t horizon)
      : std::runtime_error("fuel " + std::to_string(asked) +
                           " is beyond the store horizon " +
                           std::to_string(horizon)),
        asked(asked),
        horizon(horizon) {}
  uint64_t asked;
  uint64_t horizon;
};

}  // namespace aitlab

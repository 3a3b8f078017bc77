#ifndef OSC_VERSION_HPP
#define OSC_VERSION_HPP

namespace osc {

/// Stamped into every result row.
inline constexpr const char* kCodeVersion = "osc-0.1.0";

}  // namespace osc

#endif  // OSC_VERSION_HPP

#ifndef OSC_INSTANCE_IO_HPP
#define OSC_INSTANCE_IO_HPP

#include <filesystem>
#include <string>

#include "osc/core.hpp"

namespace osc {

/// Canonical instance document:
///   {"n": int, "edges": [[i, j, w], ...], "fields": [h...], "meta": {"model", "params", "seed"}}
/// Edges are sorted with i < j; doubles are written in shortest round-trip form. Equal
/// instances with equal metadata serialise to identical bytes.
std::string to_json_string(const IsingInstance& instance);
IsingInstance from_json_string(const std::string& text);

void save_instance(const IsingInstance& instance, const std::filesystem::path& path);
IsingInstance load_instance(const std::filesystem::path& path);

}  // namespace osc

#endif  // OSC_INSTANCE_IO_HPP

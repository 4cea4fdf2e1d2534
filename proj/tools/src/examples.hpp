#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace zcrit::cli {

// Example configurations compiled into the binary from tools/examples/*.yaml.
const std::vector<std::pair<std::string_view, std::string_view>>& embedded_examples();
std::optional<std::string_view> embedded_example(std::string_view name);

}  // namespace zcrit::cli

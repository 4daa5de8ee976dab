#pragma once
// Runs a callable on a thread with a large stack. The search engine recurses
// once per goal step, so stack use scales with the step budget; the default
// thread stack is too small for budget-sized recursion depths.

#include <cstddef>
#include <optional>
#include <exception>
#include <functional>
#include <utility>

namespace avlang::detail {

inline constexpr std::size_t kSpareStackBytes = 512u * 1024u * 1024u;

// Blocks until `fn` finishes; rethrows anything it threw.
void run_on_spare_stack(const std::function<void()>& fn);

template <typename F>
auto call_on_spare_stack(F&& fn) -> decltype(fn()) {
  using Result = decltype(fn());
  std::optional<Result> result;
  run_on_spare_stack([&] { result.emplace(fn()); });
  return std::move(*result);
}

}  // namespace avlang::detail

#pragma once

#include <cstddef>
#include <functional>
#include <memory>

namespace twostate {

/// Runs a body over [begin, end) in contiguous chunks.
///
/// With one thread the body is called once on the whole range. Otherwise the
/// range is split across a dedicated task arena. Bodies must compute each index
/// independently so that results do not depend on the thread count.
class IndexLoop {
 public:
  using Body = std::function<void(std::size_t, std::size_t)>;

  explicit IndexLoop(unsigned threads);
  ~IndexLoop();
  IndexLoop(const IndexLoop&) = delete;
  IndexLoop& operator=(const IndexLoop&) = delete;

  void run(std::size_t begin, std::size_t end, const Body& body);
  unsigned threads() const noexcept { return threads_; }

 private:
  struct Arena;
  unsigned threads_;
  std::unique_ptr<Arena> arena_;
};

}  // namespace twostate

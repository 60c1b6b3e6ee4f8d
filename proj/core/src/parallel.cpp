#include "twostate/parallel.hpp"

#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

namespace twostate {

struct IndexLoop::Arena {
  explicit Arena(int n) : arena(n) {}
  tbb::task_arena arena;
};

IndexLoop::IndexLoop(unsigned threads) : threads_(threads == 0 ? 1 : threads) {
  if (threads_ > 1) arena_ = std::make_unique<Arena>(static_cast<int>(threads_));
}

IndexLoop::~IndexLoop() = default;

void IndexLoop::run(std::size_t begin, std::size_t end, const Body& body) {
  if (begin >= end) return;
  if (!arena_) {
    body(begin, end);
    return;
  }
  arena_->arena.execute([&] {
    tbb::parallel_for(tbb::blocked_range<std::size_t>(begin, end),
                      [&](const tbb::blocked_range<std::size_t>& r) { body(r.begin(), r.end()); });
  });
}

}  // namespace twostate

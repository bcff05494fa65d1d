#pragma once

#include <cstddef>
#include <deque>
#include <vector>

#include "coevo/ga/chromosome.hpp"

namespace coevo::ga {

// Most recent generation champions, newest first.
class HallOfFame {
 public:
  explicit HallOfFame(std::size_t capacity = 5) : capacity_(capacity) {}

  void push(BitChromosome champion) {
    if (capacity_ == 0) return;
    entries_.push_front(std::move(champion));
    if (entries_.size() > capacity_) entries_.pop_back();
  }

  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return entries_.empty(); }
  bool full() const { return entries_.size() == capacity_; }
  const BitChromosome& operator[](std::size_t i) const { return entries_[i]; }

  std::vector<BitChromosome> entries() const { return {entries_.begin(), entries_.end()}; }

 private:
  std::size_t capacity_;
  std::deque<BitChromosome> entries_;
};

}  // namespace coevo::ga

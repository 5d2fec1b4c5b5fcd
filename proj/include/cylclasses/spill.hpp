#pragma once

#include <cstdio>
#include <functional>
#include <span>
#include <vector>

#include "cylclasses/perm.hpp"

namespace cylclasses {

/// FIFO key buffer that spills complete blocks to an unnamed temp file once
/// the in-memory share exceeds the configured limit. Visit order equals push
/// order either way.
class SpillableKeys {
 public:
  explicit SpillableKeys(std::size_t mem_limit_keys,
                         std::size_t block_keys = std::size_t{1} << 14)
      : block_keys_(block_keys ? block_keys : 1),
        mem_limit_(std::max(mem_limit_keys, block_keys_)) {}

  SpillableKeys(const SpillableKeys&) = delete;
  SpillableKeys& operator=(const SpillableKeys&) = delete;

  ~SpillableKeys() {
    if (spill_) std::fclose(spill_);
  }

  void push(const PermKey& k) {
    cur_.push_back(k);
    ++total_;
    if (cur_.size() == block_keys_) flush_block();
  }

  std::uint64_t size() const { return total_; }
  bool empty() const { return total_ == 0; }
  std::uint64_t spilled_blocks() const { return spilled_blocks_; }

  void visit_blocks(const std::function<void(std::span<const PermKey>)>& fn) const {
    for (const auto& b : mem_blocks_) fn(b);
    if (spill_) {
      std::rewind(spill_);
      std::vector<PermKey> buf(block_keys_);
      for (std::uint64_t i = 0; i < spilled_blocks_; ++i) {
        if (std::fread(buf.data(), sizeof(PermKey), block_keys_, spill_) !=
            block_keys_)
          throw InternalInvariantViolation("frontier spill file truncated");
        fn(std::span<const PermKey>(buf.data(), block_keys_));
      }
    }
    if (!cur_.empty()) fn(cur_);
  }

 private:
  void flush_block() {
    if (mem_blocks_.size() * block_keys_ < mem_limit_) {
      mem_blocks_.push_back(std::move(cur_));
    } else {
      if (!spill_) {
        spill_ = std::tmpfile();
        if (!spill_) throw Error("cannot create frontier spill file");
      }
      if (std::fseek(spill_, 0, SEEK_END) != 0 ||
          std::fwrite(cur_.data(), sizeof(PermKey), block_keys_, spill_) !=
              block_keys_)
        throw Error("cannot write frontier spill file");
      ++spilled_blocks_;
    }
    cur_.clear();
    cur_.reserve(block_keys_);
  }

  std::size_t block_keys_;
  std::size_t mem_limit_;
  std::vector<std::vector<PermKey>> mem_blocks_;
  std::vector<PermKey> cur_;
  mutable std::FILE* spill_ = nullptr;
  std::uint64_t spilled_blocks_ = 0;
  std::uint64_t total_ = 0;
};

}  // namespace cylclasses

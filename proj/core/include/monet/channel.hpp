#pragma once

#include <condition_variable>
#include <deque>
#include <mutex>
#include <utility>

namespace monet {

// Unbounded multi-producer multi-consumer queue used as the message link
// between the build controller and its worker units.
template <typename T>
class Channel {
 public:
  void send(T message) {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      queue_.push_back(std::move(message));
    }
    ready_.notify_one();
  }

  T receive() {
    std::unique_lock<std::mutex> lock(mutex_);
    ready_.wait(lock, [this] { return !queue_.empty(); });
    T message = std::move(queue_.front());
    queue_.pop_front();
    return message;
  }

 private:
  std::mutex mutex_;
  std::condition_variable ready_;
  std::deque<T> queue_;
};

}  // namespace monet

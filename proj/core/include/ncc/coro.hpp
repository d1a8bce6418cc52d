#pragma once

#include <coroutine>
#include <exception>
#include <optional>
#include <utility>

namespace ncc {

/// Protocol coroutine. A node program is a Proto<void>; it may await
/// sub-protocols (Proto<T>) and the engine's round awaitables. The
/// whole chain suspends as one unit whenever the innermost coroutine
/// waits for the next round; the engine resumes it from the outside.
template <typename T>
class Proto;

namespace detail {

struct PromiseBase {
  std::coroutine_handle<> continuation;
  std::exception_ptr error;

  std::suspend_always initial_suspend() noexcept { return {}; }

  struct FinalAwaiter {
    bool await_ready() noexcept { return false; }
    template <typename P>
    std::coroutine_handle<> await_suspend(std::coroutine_handle<P> h) noexcept {
      auto cont = h.promise().continuation;
      return cont ? cont : std::noop_coroutine();
    }
    void await_resume() noexcept {}
  };
  FinalAwaiter final_suspend() noexcept { return {}; }

  void unhandled_exception() { error = std::current_exception(); }
};

}  // namespace detail

template <typename T>
class [[nodiscard]] Proto {
 public:
  struct promise_type : detail::PromiseBase {
    std::optional<T> value;
    Proto get_return_object() {
      return Proto(std::coroutine_handle<promise_type>::from_promise(*this));
    }
    void return_value(T v) { value.emplace(std::move(v)); }
  };

  Proto() = default;
  explicit Proto(std::coroutine_handle<promise_type> h) : h_(h) {}
  Proto(Proto&& o) noexcept : h_(std::exchange(o.h_, {})) {}
  Proto& operator=(Proto&& o) noexcept {
    if (this != &o) {
      if (h_) h_.destroy();
      h_ = std::exchange(o.h_, {});
    }
    return *this;
  }
  Proto(const Proto&) = delete;
  Proto& operator=(const Proto&) = delete;
  ~Proto() {
    if (h_) h_.destroy();
  }

  bool await_ready() const noexcept { return false; }
  std::coroutine_handle<> await_suspend(std::coroutine_handle<> cont) {
    h_.promise().continuation = cont;
    return h_;
  }
  T await_resume() {
    if (h_.promise().error) std::rethrow_exception(h_.promise().error);
    return std::move(*h_.promise().value);
  }

  std::coroutine_handle<promise_type> handle() const { return h_; }

 private:
  std::coroutine_handle<promise_type> h_;
};

template <>
class [[nodiscard]] Proto<void> {
 public:
  struct promise_type : detail::PromiseBase {
    Proto get_return_object() {
      return Proto(std::coroutine_handle<promise_type>::from_promise(*this));
    }
    void return_void() {}
  };

  Proto() = default;
  explicit Proto(std::coroutine_handle<promise_type> h) : h_(h) {}
  Proto(Proto&& o) noexcept : h_(std::exchange(o.h_, {})) {}
  Proto& operator=(Proto&& o) noexcept {
    if (this != &o) {
      if (h_) h_.destroy();
      h_ = std::exchange(o.h_, {});
    }
    return *this;
  }
  Proto(const Proto&) = delete;
  Proto& operator=(const Proto&) = delete;
  ~Proto() {
    if (h_) h_.destroy();
  }

  bool await_ready() const noexcept { return false; }
  std::coroutine_handle<> await_suspend(std::coroutine_handle<> cont) {
    h_.promise().continuation = cont;
    return h_;
  }
  void await_resume() {
    if (h_.promise().error) std::rethrow_exception(h_.promise().error);
  }

  std::coroutine_handle<promise_type> handle() const { return h_; }

 private:
  std::coroutine_handle<promise_type> h_;
};

}  // namespace ncc

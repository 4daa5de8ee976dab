#include "spare_stack.hpp"

#include <pthread.h>

#include <stdexcept>
#include <system_error>

namespace avlang::detail {

namespace {

struct Launch {
  const std::function<void()>* fn;
  std::exception_ptr error;
};

void* trampoline(void* raw) {
  Launch* launch = static_cast<Launch*>(raw);
  try {
    (*launch->fn)();
  } catch (...) {
    launch->error = std::current_exception();
  }
  return nullptr;
}

}  // namespace

void run_on_spare_stack(const std::function<void()>& fn) {
  pthread_attr_t attr;
  if (pthread_attr_init(&attr) != 0)
    throw std::system_error(errno, std::generic_category(), "pthread_attr_init");
  pthread_attr_setstacksize(&attr, kSpareStackBytes);

  Launch launch{&fn, nullptr};
  pthread_t thread;
  int rc = pthread_create(&thread, &attr, trampoline, &launch);
  pthread_attr_destroy(&attr);
  if (rc != 0) throw std::system_error(rc, std::generic_category(), "pthread_create");
  pthread_join(thread, nullptr);
  if (launch.error) std::rethrow_exception(launch.error);
}

}  // namespace avlang::detail

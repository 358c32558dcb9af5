#ifndef SYNREORDER_ERROR_HPP
#define SYNREORDER_ERROR_HPP

#include <stdexcept>

namespace synreorder {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace synreorder

#endif  // SYNREORDER_ERROR_HPP

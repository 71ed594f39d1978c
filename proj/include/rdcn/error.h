#ifndef RDCN_ERROR_H_
#define RDCN_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace rdcn {

// Error categories. Each maps to one CLI exit status.
enum class ErrorClass {
  kValidation,  // exit 2
  kInfeasible,  // exit 3
  kBudget,      // exit 4
};

// All library failures are thrown as Error. `kind` is a stable machine name
// such as "invalid-matching" or "infeasible-delay".
class Error : public std::runtime_error {
 public:
  Error(ErrorClass error_class, std::string kind, const std::string& message)
      : std::runtime_error(message),
        error_class_(error_class),
        kind_(std::move(kind)) {}

  ErrorClass error_class() const { return error_class_; }
  const std::string& kind() const { return kind_; }

 private:
  ErrorClass error_class_;
  std::string kind_;
};

[[noreturn]] inline void Fail(std::string kind, const std::string& message) {
  throw Error(ErrorClass::kValidation, std::move(kind), message);
}

[[noreturn]] inline void FailInfeasible(std::string kind,
                                        const std::string& message) {
  throw Error(ErrorClass::kInfeasible, std::move(kind), message);
}

[[noreturn]] inline void FailBudget(std::string kind,
                                    const std::string& message) {
  throw Error(ErrorClass::kBudget, std::move(kind), message);
}

}  // namespace rdcn

#endif  // RDCN_ERROR_H_

#pragma once

#include <stdexcept>
#include <string>

namespace chf {

enum class ErrorKind {
    Domain,       // parameter outside the documented range
    Pole,         // evaluation at a Gamma pole
    BranchCut,    // argument on a branch cut
    Degenerate,   // connection formula hits a logarithmic case
    Divergence,   // series does not converge for these arguments
    Convergence,  // iteration limit reached before the tolerance was met
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

    // Process exit status used by the command line tool.
    int exit_code() const noexcept { return kind_ == ErrorKind::Convergence ? 3 : 2; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool ok, const std::string& what) {
    if (!ok) fail(ErrorKind::Domain, what);
}

}  // namespace chf

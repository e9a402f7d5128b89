#ifndef ORDCLUST_ERRORS_HPP
#define ORDCLUST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ordclust {

// Raised for malformed input data: bad CSV cells, invalid scales,
// out-of-range ranks. The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when an engine cannot make progress: degenerate or empty
// clusters, failed restarts. The CLI maps this to exit code 3.
class EngineError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ordclust

#endif  // ORDCLUST_ERRORS_HPP

#pragma once

#include <stdexcept>
#include <string>

namespace hermitia {

// Base class for everything this library throws on its own behalf.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ShapeMismatch : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct NonFiniteEntry : Error { using Error::Error; };
struct NonRealTrace : Error { using Error::Error; };
struct NonRealValue : Error { using Error::Error; };

struct NotUnitary : Error {
    NotUnitary(const std::string& what, std::size_t mode_index)
        : Error(what), mode(mode_index) {}
    std::size_t mode;  // offending mode, 0-based
};

struct EmptyKeepSet : Error { using Error::Error; };
struct OrderMismatch : Error { using Error::Error; };
struct ZeroTensor : Error { using Error::Error; };

struct NotOrthogonal : Error {
    NotOrthogonal(const std::string& what, std::size_t mode_index)
        : Error(what), mode(mode_index) {}
    std::size_t mode;
};

struct NoConvergence : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct SingularBasisSystem : Error { using Error::Error; };
struct RankDeficientU : Error { using Error::Error; };
struct NotSameTensor : Error { using Error::Error; };
struct NonPositiveWeights : Error { using Error::Error; };

struct OutOfScope : Error { using Error::Error; };
struct DegenerateSpan : Error { using Error::Error; };

struct InconsistentShapes : Error { using Error::Error; };
struct UnknownFixture : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

} // namespace hermitia

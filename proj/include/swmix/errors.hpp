#pragma once

#include <stdexcept>
#include <string>

namespace swmix {

// Every failure raised by the library carries a stable machine-readable code
// so the CLI can emit it verbatim in its JSON error objects.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code))
    {
    }

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define SWMIX_DEFINE_ERROR(Name)                                                     \
    class Name : public Error {                                                      \
    public:                                                                          \
        explicit Name(const std::string& what) : Error(#Name, what) {}               \
    }

SWMIX_DEFINE_ERROR(InvalidArgument);
SWMIX_DEFINE_ERROR(UndefinedAtPoint);
SWMIX_DEFINE_ERROR(UndefinedOnSet);
SWMIX_DEFINE_ERROR(OutsidePartition);
SWMIX_DEFINE_ERROR(EmptyLanguage);
SWMIX_DEFINE_ERROR(InadmissiblePair);
SWMIX_DEFINE_ERROR(InadmissibleSeeds);
SWMIX_DEFINE_ERROR(PreconditionFailed);
SWMIX_DEFINE_ERROR(EmptyRefinement);
SWMIX_DEFINE_ERROR(NotCovered);
SWMIX_DEFINE_ERROR(TableTooLarge);
SWMIX_DEFINE_ERROR(InvalidDocument);

#undef SWMIX_DEFINE_ERROR

// Search ran out of budget. Operations that can return partial results throw
// this only when no partial result makes sense; otherwise they flag the
// result as non-exhausted.
class BudgetExceeded : public Error {
public:
    explicit BudgetExceeded(const std::string& what) : Error("BudgetExceeded", what) {}
};

} // namespace swmix

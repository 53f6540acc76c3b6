#pragma once

#include <stdexcept>
#include <string>

namespace lozenge {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define LOZENGE_ERROR(Name)                                      \
    class Name : public Error {                                  \
    public:                                                      \
        explicit Name(const std::string& what) : Error(what) {}  \
    }

LOZENGE_ERROR(InvalidPolygon);
LOZENGE_ERROR(InvalidSignature);
LOZENGE_ERROR(RowOutOfRange);
LOZENGE_ERROR(InvalidQ);
LOZENGE_ERROR(BudgetExceeded);
LOZENGE_ERROR(DuplicatePoint);
LOZENGE_ERROR(TriangleOutsidePolygon);
LOZENGE_ERROR(BranchCutEvaluation);
LOZENGE_ERROR(DegenerateLeadingCoefficient);
LOZENGE_ERROR(OutsidePolygon);
LOZENGE_ERROR(StencilLeavesLiquidRegion);
LOZENGE_ERROR(PoleParameter);
LOZENGE_ERROR(DegenerateSlope);
LOZENGE_ERROR(RangeExceeded);
LOZENGE_ERROR(DegenerateEdgePoint);

#undef LOZENGE_ERROR

}  // namespace lozenge

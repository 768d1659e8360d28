#pragma once

#include <string>
#include <variant>

#include "rbrl/types.hpp"

namespace rbrl {

using AnyModel = std::variant<LinearModel, KernelModel>;

// Versioned little-endian binary layout ("RBRL0001" magic), plus a textual
// alternative ("#rbrl-model v1" first line) selectable at save time. Loading
// sniffs the leading bytes and accepts either form.
void save_model(const AnyModel& model, const std::string& path,
                bool text = false);
AnyModel load_model(const std::string& path);

Index model_label_count(const AnyModel& model);
Index model_input_width(const AnyModel& model); // expected raw test width

std::pair<PredictionScores, LabelPredictions> predict_any(
    const AnyModel& model, const Matrix& x_test);

} // namespace rbrl

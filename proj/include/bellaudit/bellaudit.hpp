#pragma once

#include "bellaudit/angles.hpp"
#include "bellaudit/audit.hpp"
#include "bellaudit/errors.hpp"
#include "bellaudit/inequalities.hpp"
#include "bellaudit/model_file.hpp"
#include "bellaudit/models.hpp"
#include "bellaudit/quantum.hpp"
#include "bellaudit/random_models.hpp"
#include "bellaudit/report_io.hpp"

#pragma once

#include "qepi/classical.hpp"
#include "qepi/epistemic.hpp"
#include "qepi/error.hpp"
#include "qepi/formula.hpp"
#include "qepi/io.hpp"
#include "qepi/quantum.hpp"
#include "qepi/rational.hpp"

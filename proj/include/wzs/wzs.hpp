#pragma once

// Umbrella header for the weighted zero-sum constant engine.

#include "wzs/module.hpp"
#include "wzs/weights.hpp"
#include "wzs/checker.hpp"
#include "wzs/search.hpp"
#include "wzs/constructions.hpp"
#include "wzs/theorems.hpp"
#include "wzs/serialize.hpp"

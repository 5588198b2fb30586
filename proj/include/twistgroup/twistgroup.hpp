#pragma once

#include "errors.hpp"
#include "group_lab.hpp"
#include "isogeny.hpp"
#include "json_io.hpp"
#include "linalg.hpp"
#include "mixed.hpp"
#include "ree.hpp"
#include "rings.hpp"
#include "suzuki.hpp"
#include "verify.hpp"

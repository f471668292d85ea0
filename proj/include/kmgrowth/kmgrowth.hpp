#pragma once

#include "kmgrowth/scalar.hpp"
#include "kmgrowth/root_system.hpp"
#include "kmgrowth/twist.hpp"
#include "kmgrowth/loop_algebra.hpp"
#include "kmgrowth/pbw.hpp"
#include "kmgrowth/text.hpp"
#include "kmgrowth/affine_sl2.hpp"
#include "kmgrowth/reduction.hpp"
#include "kmgrowth/growth.hpp"
#include "kmgrowth/characters.hpp"

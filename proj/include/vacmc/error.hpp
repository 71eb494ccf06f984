/*
 * Copyright 2026 The vacmc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace vacmc {

// Base class of everything the library throws on bad input.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}
    explicit ParseError(const std::string& what) : Error(what), position_(0) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// Structural problems with a Kripke structure (totality, undeclared names...).
class ModelError : public Error {
public:
    using Error::Error;
};

// An operation was called outside its documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// The formula is outside the fragment an algorithm supports.
class NotApplicableError : public Error {
public:
    using Error::Error;
};

// An enumeration would exceed the configured bound.
class BoundError : public Error {
public:
    using Error::Error;
};

} // namespace vacmc

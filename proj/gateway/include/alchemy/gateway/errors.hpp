#pragma once

#include <stdexcept>

namespace alchemy::gateway {

class GatewayError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SourceError : public GatewayError {
public:
    using GatewayError::GatewayError;
};

class ImageError : public GatewayError {
public:
    using GatewayError::GatewayError;
};

class UnsupportedEncoding : public GatewayError {
public:
    using GatewayError::GatewayError;
};

class TruncatedFile : public GatewayError {
public:
    using GatewayError::GatewayError;
};

class RecorderError : public GatewayError {
public:
    using GatewayError::GatewayError;
};

class WriteAfterStop : public RecorderError {
public:
    using RecorderError::RecorderError;
};

class AlreadyStopped : public RecorderError {
public:
    using RecorderError::RecorderError;
};

class ConfigError : public GatewayError {
public:
    using GatewayError::GatewayError;
};

class WireFormatError : public GatewayError {
public:
    using GatewayError::GatewayError;
};

class PortInUse : public GatewayError {
public:
    using GatewayError::GatewayError;
};

}  // namespace alchemy::gateway

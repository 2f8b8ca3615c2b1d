from pydantic import error_wrappers

from ckah.core.exceptions import RequestError


def raise_model_exception(exception: error_wrappers.ValidationError):
    first_error = exception.errors()[0]
    location = ".".join(str(part) for part in first_error["loc"])
    detail = f"{location}: {first_error['msg']}" if location else first_error["msg"]
    raise RequestError(detail) from exception

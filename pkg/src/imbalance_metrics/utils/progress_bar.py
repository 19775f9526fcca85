from functools import wraps
from typing import Any, Callable, Union

from tqdm.auto import tqdm


def progress(fn: Callable, bar: tqdm, message: Union[str, Callable[..., str]]) -> Callable:
    """Advance `bar` by one step per call of `fn`.

    `message` is either a fixed postfix or a function of the call arguments, so a
    single wrapped function can report which table or grid it is working on.
    """

    @wraps(fn)
    def inner(*args, **kwargs) -> Any:
        postfix = message(*args, **kwargs) if callable(message) else message
        bar.set_postfix_str(postfix)
        ret = fn(*args, **kwargs)
        bar.update()
        return ret

    return inner


def stage_bar(total: int, desc: str, enabled: bool = True) -> tqdm:
    """A progress bar over `total` stages, hidden when `enabled` is false."""
    return tqdm(total=total, desc=desc, disable=not enabled, leave=False)

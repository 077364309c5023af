from typing import Any, Callable, get_type_hints


class concretemethod:
    """
    ``concretemethod`` annotation with typechecking. This inheritance helper
    throws an error when an annotated ``concretemethod`` does not correctly
    inherit its base methods signature.

    The check runs when the owning class is created (``__set_name__``), after
    which the plain function is put back in place.

    :param method: The decorated method.
    :raises TypeError: On incorrect inheritance.
    """

    def __init__(self, method: Callable) -> None:
        self.method = method

    def __set_name__(self, owner: type, name: str) -> None:
        bases = [i for i in owner.__mro__[1:] if name in vars(i)]

        if not bases:
            raise TypeError(f"Nothing to concretise for {name}")

        base = vars(bases[0])[name]
        base = getattr(base, "__func__", base)

        if get_type_hints(self.method) != get_type_hints(base):
            raise TypeError(f"Invalid concretisation of {name}")

        setattr(owner, name, self.method)

    def __get__(self, obj: Any, owner: type = None) -> Callable:
        return self.method.__get__(obj, owner)

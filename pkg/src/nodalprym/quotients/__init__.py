"""Quotient curves of C_n and its cover: models, genera and certified golden displays."""
from .birational import *  # noqa: F401,F403
from .genus import *  # noqa: F401,F403
from .golden import *  # noqa: F401,F403
from .golden import hyperelliptic_checks
from .invariants import *  # noqa: F401,F403
from .invariants import QuotientModel, quotient_alpha, quotient_beta, quotient_beta_alpha, quotient_w4
from .genus import genus_diagram

QUOTIENT_CHOICES = ("alpha", "alpha_cover", "etilde", "beta", "beta_cover", "beta_alpha", "beta_alpha_cover", "w4")


def quotient_model(n: int, which: str) -> QuotientModel:
    """The derived model named by ``which``, with its Hurwitz genus attached."""
    if which in ("alpha", "alpha_cover", "etilde"):
        aq = quotient_alpha(n)
        model, key = {
            "alpha": (aq.X_model, "X"),
            "alpha_cover": (aq.Xtilde_model, "Xtilde"),
            "etilde": (aq.Etilde_model, "Etilde"),
        }[which]
    elif which in ("beta", "beta_cover"):
        Y, Yt = quotient_beta(n)
        model, key = (Y, "Y") if which == "beta" else (Yt, "Ytilde")
    elif which in ("beta_alpha", "beta_alpha_cover"):
        Z, Zt = quotient_beta_alpha(n)
        model, key = (Z, "Z") if which == "beta_alpha" else (Zt, "Ztilde")
    elif which == "w4":
        if n != 4:
            raise ValueError("w4 is only defined for n = 4")
        model, key = quotient_w4(), "Wtilde"
    else:
        raise ValueError(f"unknown quotient {which!r}")
    model.genus = genus_diagram(n)[key]
    model.provenance = list(model.provenance) + [f"genus {model.genus} from fixed points and Hurwitz"]
    return model

#!/usr/bin/env python3
"""
stringtop: operadores de cuerdas en superficies con borde.

Corchete de Goldman, co-corchete de Turaev, verificación aleatoria de las
identidades de bialgebra de Lie y cálculo de diagramas de cuerdas.
"""

import sys
import os

# Agregar el directorio raíz al path para imports
sys.path.append(os.path.dirname(os.path.abspath(__file__)))


def main(argv=None):
    """Función principal de la herramienta"""
    from ui.cli_interface import CLIInterface

    arguments = sys.argv[1:] if argv is None else argv
    verbose = '--verbose' in arguments or '-v' in arguments

    try:
        if verbose:
            print("=" * 60, file=sys.stderr)
            print("    STRINGTOP - OPERADORES DE CUERDAS EN SUPERFICIES", file=sys.stderr)
            print("=" * 60, file=sys.stderr)
        return CLIInterface().run(argv)

    except KeyboardInterrupt:
        print("\nOperación cancelada por el usuario.", file=sys.stderr)
        return 1
    except Exception as e:
        print(f"Error inesperado: {str(e)}", file=sys.stderr)
        if verbose:
            import traceback
            traceback.print_exc()
        return 1


if __name__ == "__main__":
    sys.exit(main())

import os


def create_directory(directory):
    if directory:
        if not os.path.exists(directory):
            print("Creating directory: {}".format(directory))
            os.makedirs(directory)


def relative_to(path, directory):
    """
    Express `path` relative to `directory` with forward slashes, the form
    used inside manifests.
    """
    return os.path.relpath(path, directory).replace(os.sep, '/')

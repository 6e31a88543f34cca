from docutils import nodes
from docutils.parsers.rst.directives.tables import ListTable

import gaplab.checks


def summary(cls):
    doc = (cls.__doc__ or '').strip()
    return doc.split('\n\n')[0].replace('\n', ' ')


class GaplabCheckTable(ListTable):
    has_content = False

    def run(self):
        gaplab.checks.load_builtins()
        checks = gaplab.checks.all().values()

        self.options['widths'] = 'auto'
        title, messages = self.make_title()

        headers = [[nodes.paragraph(text="Check")],
                   [nodes.paragraph(text="Group")],
                   [nodes.paragraph(text="Property")]]
        body = [[[nodes.literal(text=cls.name)],
                 [nodes.paragraph(text=cls.group)],
                 [nodes.paragraph(text=summary(cls))]]
                for cls in sorted(checks, key=lambda c: (c.group, c.name))]

        table = [headers] + body
        self.check_table_dimensions(table, 1, 0)
        table_node = self.build_table_from_list(table, 'auto', 1, 0)
        if title:
            table_node.insert(0, title)
        return [table_node] + messages


def setup(app):
    app.add_directive('gaplab-check-table', GaplabCheckTable)
    return {'version': '0.1'}
